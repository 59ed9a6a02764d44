#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tmlab {

using Symbol = std::uint8_t;  // tape alphabet {0,1}; blank is 0

// Head moves, ordered Left < Stay < Right. The order fixes the numeric codes
// used by the rule-index notation.
enum class Move : std::uint8_t { Left = 0, Stay = 1, Right = 2 };

constexpr int move_offset(Move m) { return static_cast<int>(m) - 1; }
char move_char(Move m);

// Right-hand side of a transition: (to_state, write, move).
struct RuleTarget {
  int to_state = 0;
  Symbol write = 0;
  Move move = Move::Stay;

  friend auto operator<=>(const RuleTarget&, const RuleTarget&) = default;
};

// A full transition-table entry: f(from_state, read) = (to_state, write, move).
struct Rule {
  int from_state = 0;
  Symbol read = 0;
  int to_state = 0;
  Symbol write = 0;
  Move move = Move::Stay;

  RuleTarget target() const { return {to_state, write, move}; }

  friend auto operator<=>(const Rule&, const Rule&) = default;
};

// Deterministic Turing machine over {0,1}: states 0..state_count-1, start
// state 0, partial transition function. The machine halts on a (state, read)
// pair that has no rule. Immutable after construction, safe to share.
class Tm {
 public:
  Tm();  // one state, no rules: halts immediately
  Tm(int state_count, const std::vector<Rule>& rules);

  int state_count() const { return state_count_; }
  std::size_t rule_count() const { return rule_count_; }

  // nullptr when f is undefined at (state, read).
  const RuleTarget* find(int state, Symbol read) const {
    std::size_t slot = static_cast<std::size_t>(state) * 2 + read;
    if (slot >= defined_.size() || !defined_[slot]) return nullptr;
    return &table_[slot];
  }

  bool defines(int state, Symbol read) const { return find(state, read) != nullptr; }

  std::vector<Rule> rules() const;  // sorted by (from_state, read)

  friend bool operator==(const Tm&, const Tm&) = default;

 private:
  int state_count_ = 1;
  std::size_t rule_count_ = 0;
  std::vector<RuleTarget> table_;
  std::vector<std::uint8_t> defined_;
};

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Error;
  std::string message;
};

// Static checks. A machine is structurally sound iff validate() reports no
// Error diagnostics; warnings (e.g. "no rules") do not block use.
std::vector<Diagnostic> validate(const Tm& machine);
bool is_valid(const Tm& machine);

}  // namespace tmlab
