#include "tmlab/simulator.hpp"

#include <ostream>
#include <stdexcept>

namespace tmlab {

StepResult step(const Tm& machine, const Configuration& config) {
  const RuleTarget* t = machine.find(config.state, config.head_symbol());
  if (!t) return {};
  StepResult r;
  r.applied = true;
  r.rule = Rule{config.state, config.head_symbol(), t->to_state, t->write, t->move};
  r.next = apply_target(config, *t);
  return r;
}

RunResult run(const Tm& machine, std::string_view input, std::uint64_t max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  if (!is_valid(machine)) throw std::invalid_argument("machine fails validation");
  Simulation sim(machine, input);
  while (sim.applied() < max_steps && sim.advance()) {
  }
  RunResult r;
  r.halted = sim.halted();
  r.applied = sim.applied();
  r.ones = sim.tape().count_ones();
  r.final_config = sim.configuration();
  return r;
}

Trace::Trace(const Tm& machine, std::string_view input, std::uint64_t max_steps)
    : machine_(machine), input_(input), max_steps_(max_steps) {
  RunResult r = run(machine, input, max_steps);
  halted_ = r.halted;
  applied_ = r.applied;
  ones_ = r.ones;
}

Trace trace(const Tm& machine, std::string_view input, std::uint64_t max_steps) {
  return Trace(machine, input, max_steps);
}

std::vector<Configuration> collect_configs(const Trace& t) {
  std::vector<Configuration> out;
  out.reserve(t.config_count());
  t.for_each_config([&](const Configuration& c) { out.push_back(c); });
  return out;
}

std::vector<WindowConfig> collect_windows(const Trace& t, int radius) {
  std::vector<WindowConfig> out;
  out.reserve(t.config_count());
  window_stream(t, radius, [&](const WindowConfig& w) { out.push_back(w); });
  return out;
}

void write_trace_csv(const Trace& t, std::ostream& out) {
  out << "step,state,head_offset,read,write,move\n";
  t.for_each_step([&](const Simulation& sim, const Rule& rule) {
    out << sim.applied() << ',' << rule.from_state << ',' << sim.tape().head() << ','
        << static_cast<int>(rule.read) << ',' << static_cast<int>(rule.write) << ','
        << move_char(rule.move) << '\n';
  });
  out << "# halted=" << (t.halted() ? 1 : 0) << " steps=" << t.steps() << " applied=" << t.applied()
      << " ones=" << t.ones() << '\n';
}

}  // namespace tmlab
