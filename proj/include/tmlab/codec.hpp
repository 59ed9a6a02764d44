#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmlab/machine.hpp"

namespace tmlab {

struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rule-index coding: a rule (q, a) -> (q', a', d) is stored as the integer
// pair (2q + a, 6q' + 3a' + d) with d coded Left=0, Stay=1, Right=2.
constexpr int input_index(int state, Symbol read) { return 2 * state + read; }
constexpr int output_index(const RuleTarget& t) {
  return 6 * t.to_state + 3 * static_cast<int>(t.write) + static_cast<int>(t.move);
}
std::pair<int, Symbol> decode_input_index(int index);
RuleTarget decode_output_index(int index);

// "n, i1, o1, ..., in, on" -> machine. The state count is inferred: one more
// than the largest state index mentioned anywhere. Missing input indices are
// undefined entries (halting reads). Throws CodecError on malformed text,
// wrong element count or a duplicate input index.
Tm decode_rule_index(std::string_view text);

// Canonical inverse: input indices ascending, ", " separated.
// decode_rule_index(encode_rule_index(t)) == t for every valid machine.
std::string encode_rule_index(const Tm& machine);

struct NamedMachine {
  std::string name;
  Tm machine;
};

// Machine file (.tm): one "name: <rule-index notation>" per line, '#' starts
// a comment, blank lines are ignored. Errors carry the offending line number.
std::vector<NamedMachine> parse_machine_file(std::string_view text,
                                             std::string_view filename = "<string>");
std::vector<NamedMachine> load_machine_file(const std::filesystem::path& path);

}  // namespace tmlab
