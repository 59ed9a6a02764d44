#include "tmlab/codec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tmlab {

std::pair<int, Symbol> decode_input_index(int index) {
  if (index < 0) throw CodecError("input index must be >= 0");
  return {index / 2, static_cast<Symbol>(index % 2)};
}

RuleTarget decode_output_index(int index) {
  if (index < 0) throw CodecError("output index must be >= 0");
  return {index / 6, static_cast<Symbol>((index % 6) / 3), static_cast<Move>(index % 3)};
}

namespace {

std::vector<long> parse_int_list(std::string_view text) {
  std::vector<long> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
    if (i == text.size()) break;
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{})
      throw CodecError("malformed integer list near '" + std::string(text.substr(i, 8)) + "'");
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return out;
}

}  // namespace

Tm decode_rule_index(std::string_view text) {
  std::vector<long> values = parse_int_list(text);
  if (values.empty()) throw CodecError("empty rule-index notation");
  long n = values[0];
  if (n < 0) throw CodecError("rule count must be >= 0");
  if (static_cast<long>(values.size()) != 2 * n + 1)
    throw CodecError("expected " + std::to_string(2 * n + 1) + " integers, got " +
                     std::to_string(values.size()));
  std::vector<Rule> rules;
  std::vector<long> seen;
  int max_state = 0;
  for (long k = 0; k < n; ++k) {
    long in = values[1 + 2 * k];
    long out = values[2 + 2 * k];
    if (in < 0 || out < 0) throw CodecError("indices must be >= 0");
    if (std::find(seen.begin(), seen.end(), in) != seen.end())
      throw CodecError("duplicate input index " + std::to_string(in));
    seen.push_back(in);
    auto [from, read] = decode_input_index(static_cast<int>(in));
    RuleTarget target = decode_output_index(static_cast<int>(out));
    rules.push_back(Rule{from, read, target.to_state, target.write, target.move});
    max_state = std::max({max_state, from, target.to_state});
  }
  return Tm(max_state + 1, rules);
}

std::string encode_rule_index(const Tm& machine) {
  std::vector<Rule> rules = machine.rules();  // already sorted by input index
  std::string out = std::to_string(rules.size());
  for (const Rule& r : rules) {
    out += ", " + std::to_string(input_index(r.from_state, r.read));
    out += ", " + std::to_string(output_index(r.target()));
  }
  return out;
}

std::vector<NamedMachine> parse_machine_file(std::string_view text, std::string_view filename) {
  std::vector<NamedMachine> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw CodecError(std::string(filename) + ":" + std::to_string(line_no) + ": " + what);
  };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) fail("expected 'name: <rule-index notation>'");
    std::string name(line.substr(0, line.find_last_not_of(" \t", colon - 1) + 1));
    if (name.empty()) fail("empty machine name");
    for (const NamedMachine& m : out)
      if (m.name == name) fail("duplicate machine name '" + name + "'");
    try {
      out.push_back({name, decode_rule_index(line.substr(colon + 1))});
    } catch (const CodecError& e) {
      fail(e.what());
    }
  }
  return out;
}

std::vector<NamedMachine> load_machine_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CodecError("cannot open machine file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine_file(buf.str(), path.string());
}

}  // namespace tmlab
