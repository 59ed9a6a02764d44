#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tmlab/configuration.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/simulator.hpp"

namespace tmlab {

// All transition targets consistent with one observed window pair. The rule
// that actually fired is always a member; the set can hold several targets
// when the windows are too narrow to tell directions apart.
struct RuleCandidateSet {
  int from_state = 0;
  Symbol read = 0;
  std::vector<RuleTarget> targets;  // sorted by (to_state, write, move)

  bool empty() const { return targets.empty(); }
  bool unique() const { return targets.size() == 1; }
  bool contains(const RuleTarget& t) const;
};

// True iff applying (w.state, w.head) -> target to any tape consistent with
// window w can produce window w_next. Cells the move reveals from outside w
// are unconstrained.
bool window_consistent(const WindowConfig& w, const WindowConfig& w_next, const RuleTarget& target);

// Candidate enumeration for one consecutive window pair (same radius).
// An empty set means no rule maps w to w_next: the pair is corrupt.
RuleCandidateSet candidates(const WindowConfig& w, const WindowConfig& w_next);

// Rule inference from consecutive full configurations. Unique except in the
// blank-tape case, where several rules yield identical padded configurations.
struct InferOutcome {
  enum class Kind { Rule, NotConsecutive, Irreducible };
  Kind kind = Kind::NotConsecutive;
  Rule rule;  // valid when kind == Kind::Rule
};
InferOutcome infer_rule_full(const Configuration& c, const Configuration& c_next);

// Raised when a window pair in a stream admits no rule at all.
struct EmptyCandidatesError : std::runtime_error {
  std::uint64_t step;
  explicit EmptyCandidatesError(std::uint64_t step_index)
      : std::runtime_error("no rule maps window " + std::to_string(step_index) + " to its successor"),
        step(step_index) {}
};

struct LearnResult {
  Tm machine;  // union of the uniquely pinned keys
  std::map<std::pair<int, Symbol>, std::vector<RuleTarget>> ambiguous;
  bool unique = false;  // every observed key pinned to exactly one target
};

// Reconstruction by per-key intersection of candidate sets across all steps.
LearnResult reconstruct(std::span<const WindowConfig> windows);
LearnResult reconstruct_trace(const Trace& t, int radius);  // streamed windows

// Reconstruction from full configurations; per-step unique outside the
// blank-tape case, so the result is the machine restricted to used rules.
LearnResult reconstruct_full(const Trace& t);

// The machine restricted to the rules the trace actually applies. Rules that
// never fire leave no trace and are unrecoverable by any learner.
Tm used_rules(const Trace& t);

// Reconstructed machine in rule-index notation plus an ambiguity table.
std::string render_report(const LearnResult& r);

}  // namespace tmlab
