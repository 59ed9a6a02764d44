#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tmlab/machine.hpp"
#include "tmlab/simulator.hpp"

namespace tmlab {

// Uniqueness notion behind the minimal-window measure.
//   Strict: every single step's candidate set is a singleton at the radius.
//   Global: per-key intersection across the whole trace pins every used rule.
// Strict is the default; global can only be smaller.
enum class CcMode { Strict, Global };

struct CcOptions {
  std::uint64_t max_steps = std::uint64_t{1} << 26;
  int threads = 0;  // 0: TMLAB_THREADS env var, then hardware concurrency
};

struct CcStarResult {
  enum class Status { Ok, Irreducible, BoundExceeded };
  Status status = Status::Ok;
  long radius = 0;
  std::uint64_t witness_step = 0;  // first step attaining the radius (strict)
                                   // or the first irreducible step

  bool ok() const { return status == Status::Ok; }
};

// Smallest window radius at which step i of the trace pins its rule uniquely;
// nullopt when no finite radius does (the blank-tape case).
std::optional<long> step_min_window(const Trace& t, std::uint64_t step_index);

// Minimal disambiguating window radius over the whole run. Strict mode takes
// the maximum of the per-step minima; global mode intersects candidate sets
// per key across steps. Status reports non-halting runs and irreducible steps.
CcStarResult cc_star(const Tm& machine, std::string_view input, CcMode mode = CcMode::Strict,
                     const CcOptions& options = {});

// Same value obtained by binary search on the monotone predicate "unique at
// radius n"; cross-checks the per-step algorithm.
CcStarResult cc_star_bsearch(const Tm& machine, std::string_view input,
                             CcMode mode = CcMode::Strict, const CcOptions& options = {});

struct ComplexityReport {
  std::string name;
  bool halted = false;
  std::uint64_t steps = 0;  // under `convention`
  std::uint64_t ones = 0;
  std::optional<std::uint64_t> cc;  // learning interactions, when requested
  CcStarResult cc_star;
  StepConvention convention = StepConvention::Configurations;
};

ComplexityReport report(std::string name, const Tm& machine, std::string_view input,
                        CcMode mode = CcMode::Strict, const CcOptions& options = {},
                        StepConvention convention = StepConvention::Configurations);

// One row of the reproduction table: name,t_T,ones,cc,cc_star (cc may be
// empty; failed rows carry a status word in place of the numbers).
std::string csv_row(const ComplexityReport& r);

int resolve_threads(int requested);

}  // namespace tmlab
