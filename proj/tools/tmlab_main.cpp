// tmlab: simulate machines, learn them back from their traces, and measure
// the minimal-window and learning-cost complexities of their runs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tmlab/codec.hpp"
#include "tmlab/complexity.hpp"
#include "tmlab/learner.hpp"
#include "tmlab/qlearner.hpp"
#include "tmlab/simulator.hpp"

namespace {

using namespace tmlab;

// Stable exit codes, also listed in the README.
enum ExitCode {
  kOk = 0,
  kUsage = 2,       // bad flags, unreadable or malformed machine files
  kBound = 3,       // a machine did not halt within the step bound
  kMismatch = 4,    // reconstruction ambiguous or different from the input
  kIrreducible = 5  // no finite window radius pins every rule
};

struct CommonOptions {
  std::string machines_file = "machines/table1.tm";
  std::vector<std::string> names;
  std::uint64_t max_steps = std::uint64_t{1} << 26;
  std::string mode = "strict";
  std::string convention = "configs";
  std::string format = "text";
  std::string input;
  std::uint64_t seed = 1;

  CcMode cc_mode() const { return mode == "global" ? CcMode::Global : CcMode::Strict; }
  StepConvention step_convention() const {
    return convention == "rules" ? StepConvention::AppliedRules : StepConvention::Configurations;
  }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("machines-file", opt.machines_file, "machine file (.tm)");
  cmd->add_option("--machines", opt.machines_file, "machine file (.tm)");
  cmd->add_option("--name", opt.names, "machine name, repeatable; default: all");
  cmd->add_option("--max-steps", opt.max_steps, "step bound per simulation");
  cmd->add_option("--mode", opt.mode, "uniqueness mode: strict|global")
      ->check(CLI::IsMember({"strict", "global"}));
  cmd->add_option("--step-convention", opt.convention, "step counting: configs|rules")
      ->check(CLI::IsMember({"configs", "rules"}));
  cmd->add_option("--format", opt.format, "output format: text|csv")
      ->check(CLI::IsMember({"text", "csv"}));
  cmd->add_option("--input", opt.input, "input written at the head (default: empty tape)");
  cmd->add_option("--seed", opt.seed, "RNG seed for learning runs");
}

// Unknown names are rejected before any computation starts.
std::vector<NamedMachine> select_machines(const CommonOptions& opt) {
  std::vector<NamedMachine> all = load_machine_file(opt.machines_file);
  if (opt.names.empty()) return all;
  std::vector<NamedMachine> picked;
  for (const std::string& name : opt.names) {
    bool found = false;
    for (const NamedMachine& nm : all)
      if (nm.name == name) {
        picked.push_back(nm);
        found = true;
        break;
      }
    if (!found) throw CodecError(opt.machines_file + ": no machine named '" + name + "'");
  }
  return picked;
}

int cmd_simulate(const CommonOptions& opt, const std::string& trace_csv) {
  std::vector<NamedMachine> machines = select_machines(opt);
  if (!trace_csv.empty() && machines.size() != 1)
    throw CodecError("--trace-csv needs exactly one selected machine");
  bool any_bound = false;
  if (opt.format == "csv") std::cout << "name,steps,ones,status\n";
  for (const NamedMachine& nm : machines) {
    RunResult r = run(nm.machine, opt.input, opt.max_steps);
    const char* status = r.halted ? "halted" : "bound-exceeded";
    any_bound |= !r.halted;
    char sep = opt.format == "csv" ? ',' : ' ';
    std::cout << nm.name << sep << r.steps(opt.step_convention()) << sep << r.ones << sep
              << status << '\n';
    if (!trace_csv.empty()) {
      std::ofstream out(trace_csv);
      if (!out) throw CodecError("cannot write " + trace_csv);
      write_trace_csv(trace(nm.machine, opt.input, opt.max_steps), out);
    }
  }
  return any_bound ? kBound : kOk;
}

int cmd_ccstar(const CommonOptions& opt, const std::string& fig5_path) {
  std::vector<NamedMachine> machines = select_machines(opt);
  bool any_irreducible = false;
  bool any_bound = false;
  std::string fig5 = "name,cc_star\n";
  if (opt.format == "csv") std::cout << "name,cc_star\n";
  char sep = opt.format == "csv" ? ',' : ' ';
  for (const NamedMachine& nm : machines) {
    CcOptions cc_opts;
    cc_opts.max_steps = opt.max_steps;
    CcStarResult r = cc_star(nm.machine, opt.input, opt.cc_mode(), cc_opts);
    std::string value;
    switch (r.status) {
      case CcStarResult::Status::Ok: value = std::to_string(r.radius); break;
      case CcStarResult::Status::Irreducible:
        value = "irreducible";
        any_irreducible = true;
        break;
      case CcStarResult::Status::BoundExceeded:
        value = "bound-exceeded";
        any_bound = true;
        break;
    }
    std::cout << nm.name << sep << value << '\n';
    fig5 += nm.name + "," + value + "\n";
  }
  if (!fig5_path.empty()) {
    std::ofstream out(fig5_path);
    if (!out) throw CodecError("cannot write " + fig5_path);
    out << fig5;
  }
  if (any_bound) return kBound;
  return any_irreducible ? kIrreducible : kOk;
}

int cmd_learn(const CommonOptions& opt, std::optional<int> radius) {
  std::vector<NamedMachine> machines = select_machines(opt);
  bool any_bound = false;
  bool any_mismatch = false;
  for (const NamedMachine& nm : machines) {
    Trace t = trace(nm.machine, opt.input, opt.max_steps);
    if (!t.halted()) {
      std::cout << nm.name << ": bound exceeded\n";
      any_bound = true;
      continue;
    }
    LearnResult r = radius ? reconstruct_trace(t, *radius) : reconstruct_full(t);
    std::cout << nm.name << (radius ? " (radius " + std::to_string(*radius) + ")" : " (full)")
              << '\n'
              << render_report(r);
    // Rules the input never exercises leave no trace; the reconstruction is
    // judged against the part of the machine that actually ran.
    Tm used = used_rules(t);
    if (used.rule_count() != nm.machine.rule_count())
      std::cout << "note: " << nm.machine.rule_count() - used.rule_count()
                << " rule(s) never fire on this input and are not recoverable\n";
    if (r.unique && r.machine == used) {
      std::cout << "result: ok\n";
    } else {
      std::cout << (r.unique ? "result: mismatch\n" : "result: ambiguous\n");
      any_mismatch = true;
    }
  }
  if (any_bound) return kBound;
  return any_mismatch ? kMismatch : kOk;
}

int cmd_cc(const CommonOptions& opt, int radius, const std::string& fig2_path,
           const std::string& curve_path) {
  std::vector<NamedMachine> machines = select_machines(opt);
  if (!curve_path.empty() && machines.size() != 1)
    throw CodecError("--emit-curve needs exactly one selected machine");
  bool any_bound = false;
  std::string fig2 = "name,t_T,cc\n";
  if (opt.format == "csv") std::cout << "name,t_T,cc,converged\n";
  char sep = opt.format == "csv" ? ',' : ' ';
  for (const NamedMachine& nm : machines) {
    Trace t = trace(nm.machine, opt.input, opt.max_steps);
    if (!t.halted()) {
      std::cout << nm.name << sep << "bound-exceeded\n";
      any_bound = true;
      continue;
    }
    QParams params;
    params.seed = opt.seed;
    std::vector<WindowConfig> windows = collect_windows(t, radius);
    LearningCurve curve = train(windows, params);
    std::cout << nm.name << sep << t.steps(opt.step_convention()) << sep << curve.interactions
              << sep << (curve.converged ? "converged" : "not-converged") << '\n';
    if (!curve.converged)
      std::cerr << nm.name << ": episode bound hit before convergence\n";
    fig2 += nm.name + "," + std::to_string(t.steps(opt.step_convention())) + "," +
            std::to_string(curve.interactions) + "\n";
    if (!curve_path.empty()) {
      std::ofstream out(curve_path);
      if (!out) throw CodecError("cannot write " + curve_path);
      write_curve_csv(curve, out);
    }
  }
  if (!fig2_path.empty()) {
    std::ofstream out(fig2_path);
    if (!out) throw CodecError("cannot write " + fig2_path);
    out << fig2;
  }
  return any_bound ? kBound : kOk;
}

int cmd_table(const CommonOptions& opt, const std::string& tier, bool with_cc,
              std::uint64_t cc_limit) {
  std::vector<NamedMachine> machines = select_machines(opt);
  // The fast tier caps simulations so the long-running machines are skipped
  // rather than simulated for minutes.
  constexpr std::uint64_t kFastTierSteps = 200000;
  std::uint64_t bound = tier == "fast" ? std::min(opt.max_steps, kFastTierSteps) : opt.max_steps;
  bool any_bound = false;
  bool any_irreducible = false;
  std::cout << "name,t_T,ones,cc,cc_star\n";
  if (with_cc)
    std::cout << "# cc: interactions of the bundled predictor (engine-specific; seed "
              << opt.seed << ", window radius 4)\n";
  for (const NamedMachine& nm : machines) {
    RunResult rr = run(nm.machine, opt.input, bound);
    if (!rr.halted) {
      if (tier == "fast")
        std::cout << "# " << nm.name << ": skipped (extended tier)\n";
      else {
        std::cout << "# " << nm.name << ": bound exceeded\n";
        any_bound = true;
      }
      continue;
    }
    CcOptions cc_opts;
    cc_opts.max_steps = bound;
    ComplexityReport row =
        report(nm.name, nm.machine, opt.input, opt.cc_mode(), cc_opts, opt.step_convention());
    if (with_cc && rr.applied <= cc_limit) {
      QParams params;
      params.seed = opt.seed;
      LearningCurve curve = train(collect_windows(trace(nm.machine, opt.input, bound),
                                                  4),
                                  params);
      if (curve.converged) row.cc = curve.interactions;
    }
    any_irreducible |= row.cc_star.status == CcStarResult::Status::Irreducible;
    std::cout << csv_row(row) << '\n';
  }
  if (any_bound) return kBound;
  return any_irreducible ? kIrreducible : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing machine laboratory: simulation, trace learning, complexity"};
  app.require_subcommand(1);

  CommonOptions opt;

  CLI::App* simulate = app.add_subcommand("simulate", "run machines, print steps and ones");
  std::string trace_csv;
  add_common(simulate, opt);
  simulate->add_option("--trace-csv", trace_csv, "write the step log as CSV");

  CLI::App* ccstar = app.add_subcommand("ccstar", "minimal disambiguating window per machine");
  std::string fig5_path;
  add_common(ccstar, opt);
  ccstar->add_option("--emit-fig5", fig5_path, "write name,cc_star CSV");

  CLI::App* learn = app.add_subcommand("learn", "reconstruct machines from their traces");
  std::optional<int> radius;
  add_common(learn, opt);
  learn->add_option("--radius", radius, "window radius; omit for full configurations");

  CLI::App* cc = app.add_subcommand("cc", "learning cost of predicting the trace");
  int cc_radius = 4;
  std::string fig2_path, curve_path;
  add_common(cc, opt);
  cc->add_option("--radius", cc_radius, "observation window radius");
  cc->add_option("--emit-fig2", fig2_path, "write name,t_T,cc CSV");
  cc->add_option("--emit-curve", curve_path, "write the per-episode learning curve CSV");

  CLI::App* table = app.add_subcommand("table", "full reproduction table as CSV");
  std::string tier = "fast";
  bool with_cc = false;
  std::uint64_t cc_limit = 25000;
  add_common(table, opt);
  table->add_option("--tier", tier, "fast skips the long-running machines")
      ->check(CLI::IsMember({"fast", "extended"}));
  table->add_flag("--with-cc", with_cc, "add the learning-cost column");
  table->add_option("--cc-limit", cc_limit, "longest trace the cc column is computed for");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opt, trace_csv);
    if (ccstar->parsed()) return cmd_ccstar(opt, fig5_path);
    if (learn->parsed()) return cmd_learn(opt, radius);
    if (cc->parsed()) return cmd_cc(opt, cc_radius, fig2_path, curve_path);
    if (table->parsed()) return cmd_table(opt, tier, with_cc, cc_limit);
  } catch (const CodecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
