#include "tmlab/configuration.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace tmlab {

Configuration make_configuration(const Tape& tape, int state) {
  Configuration c;
  c.state = state;
  c.before.reserve(static_cast<std::size_t>(tape.head() - tape.leftmost()));
  for (long p = tape.leftmost(); p < tape.head(); ++p) c.before.push_back(tape.read(p));
  c.after.clear();
  for (long p = tape.head(); p <= tape.rightmost(); ++p) c.after.push_back(tape.read(p));
  return c;
}

namespace {

std::size_t leading_zeros(const std::vector<Symbol>& v) {
  std::size_t n = 0;
  while (n < v.size() && v[n] == 0) ++n;
  return n;
}

std::size_t trailing_zeros(const std::vector<Symbol>& v) {
  std::size_t n = 0;
  while (n < v.size() && v[v.size() - 1 - n] == 0) ++n;
  return n;
}

}  // namespace

bool blank_padded_equal(const Configuration& a, const Configuration& b) {
  if (a.state != b.state) return false;
  std::size_t sa = leading_zeros(a.before), sb = leading_zeros(b.before);
  if (a.before.size() - sa != b.before.size() - sb) return false;
  if (!std::equal(a.before.begin() + static_cast<long>(sa), a.before.end(),
                  b.before.begin() + static_cast<long>(sb)))
    return false;
  std::size_t ta = trailing_zeros(a.after), tb = trailing_zeros(b.after);
  if (a.after.size() - ta != b.after.size() - tb) return false;
  return std::equal(a.after.begin(), a.after.end() - static_cast<long>(ta), b.after.begin());
}

bool is_all_blank(const Configuration& c) {
  return leading_zeros(c.before) == c.before.size() && trailing_zeros(c.after) == c.after.size();
}

Configuration apply_target(const Configuration& c, const RuleTarget& t) {
  Configuration n = c;
  n.state = t.to_state;
  n.after.front() = t.write;
  switch (t.move) {
    case Move::Stay:
      break;
    case Move::Right:
      n.before.push_back(n.after.front());
      n.after.erase(n.after.begin());
      if (n.after.empty()) n.after.push_back(0);  // head steps onto a fresh cell
      break;
    case Move::Left:
      if (n.before.empty()) {
        n.after.insert(n.after.begin(), 0);
      } else {
        n.after.insert(n.after.begin(), n.before.back());
        n.before.pop_back();
      }
      break;
  }
  return n;
}

namespace {

void append_symbols(std::string& out, const std::vector<Symbol>& v) {
  for (Symbol s : v) out.push_back(static_cast<char>('0' + s));
}

std::vector<Symbol> parse_symbols(std::string_view text) {
  std::vector<Symbol> out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("symbols must be 0 or 1");
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  return out;
}

// Splits "LEFT[state>RIGHT" into its three parts.
struct HeadSplit {
  std::string_view left, right;
  int state = 0;
};

HeadSplit split_at_head(std::string_view text) {
  std::size_t open = text.find('[');
  std::size_t close = text.find('>', open);
  if (open == std::string_view::npos || close == std::string_view::npos)
    throw std::invalid_argument("expected '[state>' head marker");
  HeadSplit h;
  h.left = text.substr(0, open);
  h.right = text.substr(close + 1);
  std::string_view num = text.substr(open + 1, close - open - 1);
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), h.state);
  if (ec != std::errc{} || ptr != num.data() + num.size())
    throw std::invalid_argument("bad state index in head marker");
  return h;
}

}  // namespace

std::string render(const Configuration& c) {
  std::string out;
  append_symbols(out, c.before);
  out += "[" + std::to_string(c.state) + ">";
  append_symbols(out, c.after);
  return out;
}

Configuration parse_configuration(std::string_view text) {
  HeadSplit h = split_at_head(text);
  Configuration c;
  c.before = parse_symbols(h.left);
  c.state = h.state;
  c.after = parse_symbols(h.right);
  if (c.after.empty()) throw std::invalid_argument("configuration needs a head cell");
  return c;
}

WindowConfig window(const Configuration& c, int radius) {
  if (radius < 0) throw std::invalid_argument("window radius must be >= 0");
  WindowConfig w;
  w.radius = radius;
  w.state = c.state;
  w.left.resize(static_cast<std::size_t>(radius));
  w.right.resize(static_cast<std::size_t>(radius) + 1);
  for (int j = 0; j < radius; ++j) w.left[static_cast<std::size_t>(j)] = c.cell(j - radius);
  for (int j = 0; j <= radius; ++j) w.right[static_cast<std::size_t>(j)] = c.cell(j);
  return w;
}

std::string render(const WindowConfig& w) {
  std::string out;
  append_symbols(out, w.left);
  out += "[" + std::to_string(w.state) + ">";
  append_symbols(out, w.right);
  return out;
}

WindowConfig parse_window(std::string_view text) {
  HeadSplit h = split_at_head(text);
  WindowConfig w;
  w.left = parse_symbols(h.left);
  w.state = h.state;
  w.right = parse_symbols(h.right);
  if (w.right.size() != w.left.size() + 1)
    throw std::invalid_argument("window needs n left and n+1 right symbols");
  w.radius = static_cast<int>(w.left.size());
  return w;
}

}  // namespace tmlab
