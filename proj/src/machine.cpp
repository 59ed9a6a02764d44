#include "tmlab/machine.hpp"

#include <stdexcept>

namespace tmlab {

char move_char(Move m) {
  switch (m) {
    case Move::Left: return 'L';
    case Move::Stay: return 'S';
    case Move::Right: return 'R';
  }
  return '?';
}

Tm::Tm() : table_(2), defined_(2, 0) {}

Tm::Tm(int state_count, const std::vector<Rule>& rules) {
  if (state_count < 1) throw std::invalid_argument("state count must be >= 1");
  state_count_ = state_count;
  table_.assign(2 * static_cast<std::size_t>(state_count), RuleTarget{});
  defined_.assign(2 * static_cast<std::size_t>(state_count), 0);
  for (const Rule& r : rules) {
    if (r.from_state < 0 || r.from_state >= state_count)
      throw std::invalid_argument("rule from-state out of range");
    if (r.read > 1 || r.write > 1)
      throw std::invalid_argument("symbols must be 0 or 1");
    if (r.to_state < 0)
      throw std::invalid_argument("rule to-state must be >= 0");
    std::size_t slot = static_cast<std::size_t>(r.from_state) * 2 + r.read;
    if (defined_[slot])
      throw std::invalid_argument("duplicate rule for (state, symbol)");
    defined_[slot] = 1;
    table_[slot] = r.target();
    ++rule_count_;
  }
}

std::vector<Rule> Tm::rules() const {
  std::vector<Rule> out;
  out.reserve(rule_count_);
  for (int q = 0; q < state_count_; ++q)
    for (Symbol a = 0; a <= 1; ++a)
      if (const RuleTarget* t = find(q, a))
        out.push_back(Rule{q, a, t->to_state, t->write, t->move});
  return out;
}

std::vector<Diagnostic> validate(const Tm& machine) {
  std::vector<Diagnostic> out;
  for (const Rule& r : machine.rules()) {
    if (r.to_state >= machine.state_count()) {
      out.push_back({Diagnostic::Severity::Error,
                     "rule (" + std::to_string(r.from_state) + "," +
                         std::to_string(static_cast<int>(r.read)) + "): target state " +
                         std::to_string(r.to_state) + " out of range"});
    }
  }
  if (machine.rule_count() == 0)
    out.push_back({Diagnostic::Severity::Warning, "no rules: halts immediately"});
  return out;
}

bool is_valid(const Tm& machine) {
  for (const Diagnostic& d : validate(machine))
    if (d.severity == Diagnostic::Severity::Error) return false;
  return true;
}

}  // namespace tmlab
