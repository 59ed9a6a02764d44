#include "tmlab/complexity.hpp"

#include <atomic>
#include <climits>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tmlab/chain_scan.hpp"
#include "tmlab/step_scan.hpp"

namespace tmlab {

int resolve_threads(int requested) {
  if (requested > 0) return std::min(requested, 256);
  if (const char* env = std::getenv("TMLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return std::min(v, 256);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(std::min(hc, 16u));
}

namespace {

struct Shard {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  Simulation sim;
};

// Cuts the run into contiguous step ranges, each with a checkpointed engine
// at its start; tape snapshots are cheap next to the analysis itself.
std::vector<Shard> make_shards(const Tm& machine, std::string_view input, std::uint64_t total,
                               int threads) {
  constexpr std::uint64_t kMinChunk = 1 << 16;
  std::uint64_t shard_count =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(threads),
                                                         (total + kMinChunk - 1) / kMinChunk));
  std::uint64_t chunk = (total + shard_count - 1) / shard_count;
  std::vector<Shard> shards;
  Simulation sim(machine, input);
  for (std::uint64_t begin = 0; begin < total; begin += chunk) {
    while (sim.applied() < begin) sim.advance();
    shards.push_back({begin, std::min(begin + chunk, total), sim});
  }
  if (shards.empty()) shards.push_back({0, 0, sim});
  return shards;
}

template <class Worker>
void run_shards(std::vector<Shard>& shards, const Worker& worker) {
  if (shards.size() == 1) {
    worker(0, shards[0]);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(shards.size());
  for (std::size_t i = 0; i < shards.size(); ++i)
    pool.emplace_back([&, i] { worker(i, shards[i]); });
  for (std::thread& t : pool) t.join();
}

// Analysis of one step, shared by every walk below.
template <class Fn>
void scan_shard(Shard& shard, const Fn& per_step) {
  Simulation& sim = shard.sim;
  Rule rule;
  for (std::uint64_t i = shard.begin; i < shard.end; ++i) {
    sim.next_rule(rule);
    const Tape& tape = sim.tape();
    long cap = detail::saturation_cap(tape.head(), tape.leftmost(), tape.rightmost());
    if (!per_step(i, tape, rule, cap)) return;
    sim.advance();
  }
}

struct StrictAcc {
  long max_radius = 0;
  std::uint64_t witness = 0;
  bool irreducible = false;
  std::uint64_t irreducible_step = 0;
};

// Per-key fold for global mode: smallest kill radius seen anywhere for each
// (direction, write) competitor of the key's actual rule.
struct GlobalKeyFold {
  bool seen = false;
  RuleTarget actual;
  int min_kill[3][2] = {{INT_MAX, INT_MAX}, {INT_MAX, INT_MAX}, {INT_MAX, INT_MAX}};
};

constexpr int write_visible_radius(int dir) { return dir == 1 ? 0 : 1; }

struct GlobalAcc {
  std::vector<GlobalKeyFold> keys;

  explicit GlobalAcc(int state_count) : keys(2 * static_cast<std::size_t>(state_count)) {}

  void fold(std::size_t slot, int dir, Symbol write, int radius) {
    int& cell = keys[slot].min_kill[dir][write];
    cell = std::min(cell, radius);
  }
};

CcStarResult strict_walk(const Tm& machine, std::string_view input, std::uint64_t total,
                         int threads) {
  std::vector<Shard> shards = make_shards(machine, input, total, threads);
  std::vector<StrictAcc> accs(shards.size());
  run_shards(shards, [&](std::size_t idx, Shard& shard) {
    StrictAcc& acc = accs[idx];
    scan_shard(shard, [&](std::uint64_t i, const Tape& tape, const Rule& rule, long cap) {
      detail::StepScan s = detail::fast_scan_step(tape, move_offset(rule.move), rule.write, cap);
      if (s.irreducible()) {
        acc.irreducible = true;
        acc.irreducible_step = i;
        return false;
      }
      long r = s.min_unique_radius();
      if (r > acc.max_radius) {
        acc.max_radius = r;
        acc.witness = i;
      }
      return true;
    });
  });
  CcStarResult result;
  for (const StrictAcc& acc : accs) {
    if (acc.irreducible) {
      result.status = CcStarResult::Status::Irreducible;
      result.witness_step = acc.irreducible_step;
      result.radius = 0;
      return result;
    }
    if (acc.max_radius > result.radius) {
      result.radius = acc.max_radius;
      result.witness_step = acc.witness;
    }
  }
  return result;
}

CcStarResult global_walk(const Tm& machine, std::string_view input, std::uint64_t total,
                         int threads) {
  std::vector<Shard> shards = make_shards(machine, input, total, threads);
  std::vector<GlobalAcc> accs(shards.size(), GlobalAcc(machine.state_count()));
  run_shards(shards, [&](std::size_t idx, Shard& shard) {
    GlobalAcc& acc = accs[idx];
    scan_shard(shard, [&](std::uint64_t, const Tape& tape, const Rule& rule, long cap) {
      detail::StepScan s = detail::fast_scan_step(tape, move_offset(rule.move), rule.write, cap);
      std::size_t slot = static_cast<std::size_t>(rule.from_state) * 2 + rule.read;
      GlobalKeyFold& key = acc.keys[slot];
      key.seen = true;
      key.actual = rule.target();
      for (int d = 0; d < 3; ++d) {
        if (d == s.observed_dir) {
          acc.fold(slot, d, 1 - rule.write, write_visible_radius(d));
        } else {
          // The wrong-write twin shares every constraint except the written
          // cell, so it dies at the earlier of the two radii.
          int vis = write_visible_radius(d);
          if (s.kill[d] != detail::StepScan::kAlive) {
            acc.fold(slot, d, s.pinned_write[d], s.kill[d]);
            acc.fold(slot, d, 1 - s.pinned_write[d], std::min(s.kill[d], vis));
          } else {
            acc.fold(slot, d, 1 - s.pinned_write[d], vis);
          }
        }
      }
      return true;
    });
  });
  GlobalAcc merged(machine.state_count());
  for (const GlobalAcc& acc : accs)
    for (std::size_t slot = 0; slot < acc.keys.size(); ++slot) {
      if (!acc.keys[slot].seen) continue;
      merged.keys[slot].seen = true;
      merged.keys[slot].actual = acc.keys[slot].actual;
      for (int d = 0; d < 3; ++d)
        for (int y = 0; y < 2; ++y)
          merged.keys[slot].min_kill[d][y] =
              std::min(merged.keys[slot].min_kill[d][y], acc.keys[slot].min_kill[d][y]);
    }
  CcStarResult result;
  for (const GlobalKeyFold& key : merged.keys) {
    if (!key.seen) continue;
    for (int d = 0; d < 3; ++d)
      for (int y = 0; y < 2; ++y) {
        if (d == static_cast<int>(key.actual.move) && y == key.actual.write) continue;
        if (key.min_kill[d][y] == INT_MAX) {
          result.status = CcStarResult::Status::Irreducible;
          return result;
        }
        result.radius = std::max(result.radius, static_cast<long>(key.min_kill[d][y]));
      }
  }
  return result;
}

// Monotone predicate "unique at radius n" for the binary search.
bool unique_at_radius(const Tm& machine, std::string_view input, std::uint64_t total, int threads,
                      CcMode mode, long n) {
  if (n < 0) return total == 0;
  std::vector<Shard> shards = make_shards(machine, input, total, threads);
  if (mode == CcMode::Strict) {
    std::atomic<bool> failed{false};
    run_shards(shards, [&](std::size_t, Shard& shard) {
      scan_shard(shard, [&](std::uint64_t, const Tape& tape, const Rule& rule, long cap) {
        if (failed.load(std::memory_order_relaxed)) return false;
        detail::StepScan s =
            detail::fast_scan_step(tape, move_offset(rule.move), rule.write, std::min(cap, n));
        if (s.min_unique_radius() > n || s.irreducible()) {
          failed.store(true, std::memory_order_relaxed);
          return false;
        }
        return true;
      });
    });
    return !failed.load();
  }
  // Global: a key is pinned at n iff every competitor triple dies by n at
  // some step; wrong-write triples always die once the write is visible.
  std::vector<GlobalAcc> accs(shards.size(), GlobalAcc(machine.state_count()));
  run_shards(shards, [&](std::size_t idx, Shard& shard) {
    GlobalAcc& acc = accs[idx];
    scan_shard(shard, [&](std::uint64_t, const Tape& tape, const Rule& rule, long cap) {
      detail::StepScan s =
          detail::fast_scan_step(tape, move_offset(rule.move), rule.write, std::min(cap, n));
      std::size_t slot = static_cast<std::size_t>(rule.from_state) * 2 + rule.read;
      acc.keys[slot].seen = true;
      acc.keys[slot].actual = rule.target();
      for (int d = 0; d < 3; ++d) {
        if (d == s.observed_dir) {
          acc.fold(slot, d, 1 - rule.write, write_visible_radius(d));
        } else {
          // The wrong-write twin shares every constraint except the written
          // cell, so it dies at the earlier of the two radii.
          int vis = write_visible_radius(d);
          if (s.kill[d] != detail::StepScan::kAlive) {
            acc.fold(slot, d, s.pinned_write[d], s.kill[d]);
            acc.fold(slot, d, 1 - s.pinned_write[d], std::min(s.kill[d], vis));
          } else {
            acc.fold(slot, d, 1 - s.pinned_write[d], vis);
          }
        }
      }
      return true;
    });
  });
  for (std::size_t slot = 0; slot < 2 * static_cast<std::size_t>(machine.state_count()); ++slot) {
    bool seen = false;
    RuleTarget actual;
    int folded[3][2] = {{INT_MAX, INT_MAX}, {INT_MAX, INT_MAX}, {INT_MAX, INT_MAX}};
    for (const GlobalAcc& acc : accs) {
      if (!acc.keys[slot].seen) continue;
      seen = true;
      actual = acc.keys[slot].actual;
      for (int d = 0; d < 3; ++d)
        for (int y = 0; y < 2; ++y)
          folded[d][y] = std::min(folded[d][y], acc.keys[slot].min_kill[d][y]);
    }
    if (!seen) continue;
    for (int d = 0; d < 3; ++d)
      for (int y = 0; y < 2; ++y) {
        if (d == static_cast<int>(actual.move) && y == actual.write) continue;
        if (folded[d][y] > n) return false;
      }
  }
  return true;
}

}  // namespace

std::optional<long> step_min_window(const Trace& t, std::uint64_t step_index) {
  if (step_index >= t.applied()) throw std::invalid_argument("step index out of range");
  Simulation sim(t.machine(), t.input());
  while (sim.applied() < step_index) sim.advance();
  Rule rule;
  sim.next_rule(rule);
  const Tape& tape = sim.tape();
  long cap = detail::saturation_cap(tape.head(), tape.leftmost(), tape.rightmost());
  auto view = [&tape](long pos) { return tape.read(pos); };
  detail::StepScan s = detail::scan_step(view, tape.head(), move_offset(rule.move), rule.write, cap);
  if (s.irreducible()) return std::nullopt;
  return s.min_unique_radius();
}

CcStarResult cc_star(const Tm& machine, std::string_view input, CcMode mode,
                     const CcOptions& options) {
  RunResult rr = run(machine, input, options.max_steps);
  if (!rr.halted) return {CcStarResult::Status::BoundExceeded, 0, 0};
  if (rr.applied == 0) return {CcStarResult::Status::Ok, 0, 0};
  int threads = resolve_threads(options.threads);
  return mode == CcMode::Strict ? strict_walk(machine, input, rr.applied, threads)
                                : global_walk(machine, input, rr.applied, threads);
}

CcStarResult cc_star_bsearch(const Tm& machine, std::string_view input, CcMode mode,
                             const CcOptions& options) {
  RunResult rr = run(machine, input, options.max_steps);
  if (!rr.halted) return {CcStarResult::Status::BoundExceeded, 0, 0};
  if (rr.applied == 0) return {CcStarResult::Status::Ok, 0, 0};
  int threads = resolve_threads(options.threads);
  auto pred = [&](long n) {
    return unique_at_radius(machine, input, rr.applied, threads, mode, n);
  };
  // Touched extents only grow, so the final extent bounds every step's
  // saturation cap; beyond it the predicate can change no more.
  long bound =
      static_cast<long>(rr.final_config.before.size() + rr.final_config.after.size()) + 3;
  if (pred(0)) return {CcStarResult::Status::Ok, 0, 0};
  long lo = 0;
  long hi = 1;
  while (hi <= bound && !pred(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (hi > bound) {
    if (!pred(bound)) return {CcStarResult::Status::Irreducible, 0, 0};
    hi = bound;
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  // The search is only sound over a monotone predicate; re-probe the
  // boundary so a violation surfaces instead of returning garbage.
  if (!pred(hi) || (hi > 0 && pred(hi - 1)))
    throw std::logic_error("uniqueness predicate is not monotone in the radius");
  return {CcStarResult::Status::Ok, hi, 0};
}

ComplexityReport report(std::string name, const Tm& machine, std::string_view input, CcMode mode,
                        const CcOptions& options, StepConvention convention) {
  ComplexityReport r;
  r.name = std::move(name);
  r.convention = convention;
  RunResult rr = run(machine, input, options.max_steps);
  r.halted = rr.halted;
  r.steps = rr.steps(convention);
  r.ones = rr.ones;
  if (rr.halted) r.cc_star = cc_star(machine, input, mode, options);
  return r;
}

std::string csv_row(const ComplexityReport& r) {
  if (!r.halted) return "# " + r.name + ": bound exceeded";
  std::string row = r.name + "," + std::to_string(r.steps) + "," + std::to_string(r.ones) + ",";
  if (r.cc) row += std::to_string(*r.cc);
  row += ",";
  switch (r.cc_star.status) {
    case CcStarResult::Status::Ok: row += std::to_string(r.cc_star.radius); break;
    case CcStarResult::Status::Irreducible: row += "irreducible"; break;
    case CcStarResult::Status::BoundExceeded: row += "bound-exceeded"; break;
  }
  return row;
}

}  // namespace tmlab
