#pragma once

#include <cstring>

#include "tmlab/step_scan.hpp"
#include "tmlab/tape.hpp"

namespace tmlab::detail {

// Word-accelerated variant of scan_step for trace walks.
//
// Past radius 2 the surviving constraints of a competitor direction reduce to
// two marches, one per window side: compare T(x) with T(x + delta) for a
// fixed delta in {-2,-1,1,2} while x steps outward cell by cell. Those are
// shifted self-comparisons of the tape, so the first break can be found eight
// cells at a time with word loads on the backing store. Results are identical
// to scan_step; only the walk time changes.

// Smallest t in [0, limit] with T(a + dir*t) != T(a + dir*t + delta), or
// limit + 1 when the chain holds throughout.
inline long first_chain_break(const Tape& tape, long a, long delta, int dir, long limit) {
  const Symbol* buf = tape.store_data();
  const long org = tape.store_origin();
  const long size = static_cast<long>(tape.store_size());
  long t = 0;
  while (t <= limit) {
    long x = a + dir * t;
    long y = x + delta;
    long ix = x - org;
    long iy = y - org;
    if (t + 7 <= limit) {
      if (dir > 0 && ix >= 0 && iy >= 0 && ix + 8 <= size && iy + 8 <= size) {
        std::uint64_t wx, wy;
        std::memcpy(&wx, buf + ix, 8);
        std::memcpy(&wy, buf + iy, 8);
        if (wx == wy) {
          t += 8;
          continue;
        }
        return t + __builtin_ctzll(wx ^ wy) / 8;
      }
      if (dir < 0 && ix - 7 >= 0 && iy - 7 >= 0 && ix < size && iy < size) {
        std::uint64_t wx, wy;
        std::memcpy(&wx, buf + ix - 7, 8);
        std::memcpy(&wy, buf + iy - 7, 8);
        if (wx == wy) {
          t += 8;
          continue;
        }
        // Byte j of the loaded words sits at t + (7 - j); the first break is
        // the highest differing byte.
        return t + 7 - (63 - __builtin_clzll(wx ^ wy)) / 8;
      }
    }
    if (tape.read(x) != tape.read(y)) return t;
    ++t;
  }
  return limit + 1;
}

inline StepScan fast_scan_step(const Tape& tape, int delta, Symbol write, long cap) {
  const long head = tape.head();
  auto view = [&tape](long pos) { return tape.read(pos); };
  // Radii 0..2 carry all the special cells (the write, the self-pinned cell);
  // the generic scan settles them.
  constexpr long kSmall = 2;
  StepScan s = scan_step(view, head, delta, write, std::min(cap, kSmall));
  s.cap = cap;
  if (cap <= kSmall) return s;
  for (int d = 0; d < 3; ++d) {
    if (d == s.observed_dir || s.kill[d] != StepScan::kAlive) continue;
    long eps = d - 1;
    long chain_limit = cap - (kSmall + 1);
    long left =
        first_chain_break(tape, head + eps - (kSmall + 1), delta - eps, -1, chain_limit);
    long right = left == 0 ? 0
                           : first_chain_break(tape, head + eps + (kSmall + 1), delta - eps, +1,
                                               std::min(chain_limit, left - 1));
    long first = std::min(left, right);
    if (first <= chain_limit) s.kill[d] = static_cast<int>(kSmall + 1 + first);
  }
  return s;
}

}  // namespace tmlab::detail
