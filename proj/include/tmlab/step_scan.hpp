#pragma once

#include <algorithm>

#include "tmlab/machine.hpp"

namespace tmlab::detail {

// Per-step ambiguity scan over one observed transition.
//
// Inputs: the tape before the step, the head position, and the observed
// outcome (head shift delta, written symbol). For the two head directions
// other than the observed one this finds the first window radius at which
// forward-applying the direction's implied rule to the actual configuration
// stops matching the observed next window — the "kill radius". The observed
// stream comes from the machine's real tape, so cells a candidate move pulls
// in from outside the previous window are checked against that tape; this is
// strictly sharper than what the window pair alone implies and is what the
// minimal-window measure is built on. A direction still consistent at the
// saturation cap (windows span the whole touched extent plus a blank margin)
// can never die: that is exactly the blank-tape case excluded by
// full-configuration rule inference.
struct StepScan {
  static constexpr int kAlive = -1;
  int kill[3] = {kAlive, kAlive, kAlive};  // indexed by Move value
  Symbol pinned_write[3] = {0, 0, 0};      // write implied per direction once visible
  int observed_dir = 1;
  long cap = 0;

  bool irreducible() const {
    for (int d = 0; d < 3; ++d)
      if (d != observed_dir && kill[d] == kAlive) return true;
    return false;
  }

  // Smallest radius whose candidate set is a singleton; valid when not
  // irreducible. The wrong-write twin of the observed rule dies once the
  // written cell enters the window: immediately for Stay, at radius 1 for
  // side moves.
  long min_unique_radius() const {
    long r = observed_dir == 1 ? 0 : 1;
    for (int d = 0; d < 3; ++d)
      if (d != observed_dir) r = std::max(r, static_cast<long>(kill[d]));
    return r;
  }
};

inline long saturation_cap(long head, long leftmost, long rightmost) {
  return std::max(head - (leftmost - 1), (rightmost + 1) - head) + 1;
}

template <class TapeFn>
StepScan scan_step(const TapeFn& tape, long head, int delta, Symbol write, long cap) {
  StepScan s;
  s.observed_dir = delta + 1;
  s.cap = cap;
  const long new_head = head + delta;
  auto observed = [&](long k) -> Symbol {
    long pos = new_head + k;
    return pos == head ? write : tape(pos);
  };
  for (int d = 0; d < 3; ++d) s.pinned_write[d] = observed(-(d - 1));

  // Candidate direction eps maps observed offset k onto pre-step offset
  // k + eps. The cell at offset -eps carries the candidate's own write and is
  // self-pinned; every other offset compares the real tape against the
  // observed window.
  auto consistent_at = [&](long eps, long k) -> bool {
    return tape(head + k + eps) == observed(k);
  };

  int live[2];
  int n_live = 0;
  for (int d = 0; d < 3; ++d)
    if (d != s.observed_dir) live[n_live++] = d;

  // Growing the radius from n-1 to n adds the two window offsets -n and n.
  for (long n = 0; n_live > 0 && n <= cap; ++n) {
    for (int i = 0; i < n_live;) {
      int d = live[i];
      long eps = d - 1;
      bool ok = (-n == -eps || consistent_at(eps, -n)) &&
                (n == -eps || n == -n || consistent_at(eps, n));
      if (!ok) {
        s.kill[d] = static_cast<int>(n);
        live[i] = live[--n_live];
      } else {
        ++i;
      }
    }
  }
  return s;
}

}  // namespace tmlab::detail
