#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tmlab/machine.hpp"
#include "tmlab/tape.hpp"

namespace tmlab {

// Instantaneous description over the touched tape extent: cells left of the
// head (leftmost first), the head state, and cells from the head rightward.
// `after` always holds at least the head cell.
struct Configuration {
  std::vector<Symbol> before;
  int state = 0;
  std::vector<Symbol> after = {0};

  Symbol head_symbol() const { return after.front(); }
  // Cell at signed offset k from the head; 0 beyond the recorded extent.
  Symbol cell(long k) const {
    if (k < 0) {
      long idx = static_cast<long>(before.size()) + k;
      return idx >= 0 ? before[static_cast<std::size_t>(idx)] : 0;
    }
    return k < static_cast<long>(after.size()) ? after[static_cast<std::size_t>(k)] : 0;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration make_configuration(const Tape& tape, int state);

// Equality with infinite blank padding on both ends, head positions aligned.
bool blank_padded_equal(const Configuration& a, const Configuration& b);
bool is_all_blank(const Configuration& c);

// Forced application of a transition target (no machine lookup involved).
Configuration apply_target(const Configuration& c, const RuleTarget& t);

std::string render(const Configuration& c);  // e.g. "0101[3>1101"
Configuration parse_configuration(std::string_view text);

// Windowed view: n cells left of the head (leftmost first), head state, head
// cell plus n cells rightward; blank-filled beyond the extent.
struct WindowConfig {
  int radius = 0;
  std::vector<Symbol> left;
  int state = 0;
  std::vector<Symbol> right = {0};

  Symbol head_symbol() const { return right.front(); }
  // Cell at signed offset k from the head, |k| <= radius.
  Symbol cell(long k) const {
    return k < 0 ? left[static_cast<std::size_t>(radius + k)]
                 : right[static_cast<std::size_t>(k)];
  }

  friend bool operator==(const WindowConfig&, const WindowConfig&) = default;
};

WindowConfig window(const Configuration& c, int radius);
std::string render(const WindowConfig& w);
WindowConfig parse_window(std::string_view text);

}  // namespace tmlab
