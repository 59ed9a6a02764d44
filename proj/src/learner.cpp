#include "tmlab/learner.hpp"

#include <algorithm>
#include <set>

#include "tmlab/codec.hpp"
#include "tmlab/chain_scan.hpp"

namespace tmlab {

bool RuleCandidateSet::contains(const RuleTarget& t) const {
  return std::find(targets.begin(), targets.end(), t) != targets.end();
}

bool window_consistent(const WindowConfig& w, const WindowConfig& w_next,
                       const RuleTarget& target) {
  if (w.radius != w_next.radius)
    throw std::invalid_argument("window radii differ");
  if (w_next.state != target.to_state) return false;
  const long n = w.radius;
  const long eps = move_offset(target.move);
  for (long k = -n; k <= n; ++k) {
    long src = k + eps;  // pre-step offset the observed cell k corresponds to
    if (src < -n || src > n) continue;  // revealed from outside: unconstrained
    Symbol predicted = src == 0 ? target.write : w.cell(src);
    if (predicted != w_next.cell(k)) return false;
  }
  return true;
}

RuleCandidateSet candidates(const WindowConfig& w, const WindowConfig& w_next) {
  RuleCandidateSet out;
  out.from_state = w.state;
  out.read = w.head_symbol();
  for (Move mv : {Move::Left, Move::Stay, Move::Right}) {
    long eps = move_offset(mv);
    // The write lands at pre-step offset 0, visible in w_next at offset -eps
    // unless the window is too narrow (radius 0, side moves): then both
    // writes are possible.
    Symbol pinned = 0;
    bool write_visible = std::abs(eps) <= w.radius;
    if (write_visible) pinned = w_next.cell(-eps);
    for (Symbol y : {Symbol{0}, Symbol{1}}) {
      if (write_visible && y != pinned) continue;
      RuleTarget t{w_next.state, y, mv};
      if (window_consistent(w, w_next, t)) out.targets.push_back(t);
    }
  }
  std::sort(out.targets.begin(), out.targets.end());
  return out;
}

InferOutcome infer_rule_full(const Configuration& c, const Configuration& c_next) {
  std::vector<Rule> found;
  for (Move mv : {Move::Left, Move::Stay, Move::Right}) {
    for (Symbol y : {Symbol{0}, Symbol{1}}) {
      RuleTarget t{c_next.state, y, mv};
      if (blank_padded_equal(apply_target(c, t), c_next))
        found.push_back(Rule{c.state, c.head_symbol(), t.to_state, t.write, t.move});
    }
  }
  InferOutcome r;
  if (found.empty()) {
    r.kind = InferOutcome::Kind::NotConsecutive;
  } else if (found.size() == 1) {
    r.kind = InferOutcome::Kind::Rule;
    r.rule = found.front();
  } else {
    r.kind = InferOutcome::Kind::Irreducible;
  }
  return r;
}

namespace {

struct KeyIntersection {
  std::map<std::pair<int, Symbol>, std::vector<RuleTarget>> sets;

  void fold(int state, Symbol read, const std::vector<RuleTarget>& targets) {
    auto key = std::make_pair(state, read);
    auto it = sets.find(key);
    if (it == sets.end()) {
      sets.emplace(key, targets);
      return;
    }
    std::vector<RuleTarget>& cur = it->second;
    cur.erase(std::remove_if(cur.begin(), cur.end(),
                             [&](const RuleTarget& t) {
                               return std::find(targets.begin(), targets.end(), t) ==
                                      targets.end();
                             }),
              cur.end());
  }

  LearnResult finish() const {
    LearnResult r;
    r.unique = true;
    std::vector<Rule> rules;
    int max_state = 0;
    for (const auto& [key, targets] : sets) {
      max_state = std::max(max_state, key.first);
      if (targets.size() == 1) {
        rules.push_back(
            Rule{key.first, key.second, targets[0].to_state, targets[0].write, targets[0].move});
        max_state = std::max(max_state, targets[0].to_state);
      } else {
        r.unique = false;
        r.ambiguous.emplace(key, targets);
      }
    }
    r.machine = Tm(max_state + 1, rules);
    return r;
  }
};

}  // namespace

LearnResult reconstruct(std::span<const WindowConfig> windows) {
  KeyIntersection acc;
  for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
    RuleCandidateSet cs = candidates(windows[i], windows[i + 1]);
    if (cs.empty()) throw EmptyCandidatesError(i);
    acc.fold(cs.from_state, cs.read, cs.targets);
  }
  return acc.finish();
}

LearnResult reconstruct_trace(const Trace& t, int radius) {
  KeyIntersection acc;
  bool have_prev = false;
  WindowConfig prev;
  std::uint64_t index = 0;
  window_stream(t, radius, [&](const WindowConfig& w) {
    if (have_prev) {
      RuleCandidateSet cs = candidates(prev, w);
      if (cs.empty()) throw EmptyCandidatesError(index);
      acc.fold(cs.from_state, cs.read, cs.targets);
      ++index;
    }
    prev = w;
    have_prev = true;
  });
  return acc.finish();
}

LearnResult reconstruct_full(const Trace& t) {
  // Competitor directions die at small radii almost everywhere, so scanning
  // each step until at most one direction survives is far cheaper than
  // applying candidate rules to whole configurations.
  KeyIntersection acc;
  t.for_each_step([&](const Simulation& sim, const Rule& rule) {
    const Tape& tape = sim.tape();
    long cap = detail::saturation_cap(tape.head(), tape.leftmost(), tape.rightmost());
    detail::StepScan scan =
        detail::fast_scan_step(tape, move_offset(rule.move), rule.write, cap);
    std::vector<RuleTarget> survivors{{rule.to_state, rule.write, rule.move}};
    for (int d = 0; d < 3; ++d)
      if (d != scan.observed_dir && scan.kill[d] == detail::StepScan::kAlive)
        survivors.push_back({rule.to_state, scan.pinned_write[d], static_cast<Move>(d)});
    std::sort(survivors.begin(), survivors.end());
    acc.fold(rule.from_state, rule.read, survivors);
  });
  return acc.finish();
}

Tm used_rules(const Trace& t) {
  std::set<Rule> used;
  t.for_each_step([&](const Simulation&, const Rule& rule) { used.insert(rule); });
  std::vector<Rule> rules(used.begin(), used.end());
  int max_state = 0;
  for (const Rule& r : rules) max_state = std::max({max_state, r.from_state, r.to_state});
  return Tm(max_state + 1, rules);
}

std::string render_report(const LearnResult& r) {
  std::string out = "machine: " + encode_rule_index(r.machine) + "\n";
  out += std::string("unique: ") + (r.unique ? "yes" : "no") + "\n";
  if (!r.ambiguous.empty()) {
    out += "ambiguous keys:\n";
    for (const auto& [key, targets] : r.ambiguous) {
      out += "  (" + std::to_string(key.first) + "," + std::to_string(static_cast<int>(key.second)) +
             ") -> {";
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (i) out += "; ";
        out += "(" + std::to_string(targets[i].to_state) + "," +
               std::to_string(static_cast<int>(targets[i].write)) + "," +
               move_char(targets[i].move) + ")";
      }
      out += "}\n";
    }
  }
  return out;
}

}  // namespace tmlab
