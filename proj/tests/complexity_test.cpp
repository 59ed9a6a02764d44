#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "tmlab/chain_scan.hpp"
#include "tmlab/codec.hpp"
#include "tmlab/complexity.hpp"
#include "tmlab/learner.hpp"
#include "tmlab/simulator.hpp"

using namespace tmlab;

namespace {

Tm machine_named(const std::string& name) {
  for (auto& nm : load_machine_file(TMLAB_MACHINES_FILE))
    if (nm.name == name) return nm.machine;
  throw std::runtime_error("no such machine: " + name);
}

// max over steps of the real-tape brute-force per-step minimum.
std::optional<long> brute_cc_star(const Tm& m, std::uint64_t bound) {
  Trace t = trace(m, "", bound);
  auto configs = collect_configs(t);
  long best = 0;
  for (std::size_t i = 0; i + 1 < configs.size(); ++i) {
    auto r = oracle::real_min_window(configs[i], configs[i + 1], m.state_count() + 1, 64);
    if (!r) return std::nullopt;
    best = std::max(best, *r);
  }
  return best;
}

}  // namespace

TEST_CASE("per-step minimal windows inside a ones block") {
  // A right-mover crossing a block of nine ones: the block edges decide.
  Tm m(1, {Rule{0, 1, 0, 1, Move::Right}});
  Trace t = trace(m, "111111111", 64);
  REQUIRE(t.applied() == 9);
  CHECK(step_min_window(t, 0) == 1);
  CHECK(step_min_window(t, 4) == 4);
  CHECK(step_min_window(t, 8) == 9);  // stepping off the block: the far edge decides

  auto configs = collect_configs(t);
  for (std::size_t i = 0; i < t.applied(); ++i) {
    auto expected = oracle::real_min_window(configs[i], configs[i + 1], m.state_count() + 1, 64);
    CAPTURE(i);
    CHECK(step_min_window(t, i) == expected);
  }
  CHECK_THROWS_AS(step_min_window(t, 9), std::invalid_argument);
}

TEST_CASE("blank-tape steps are irreducible") {
  Tm m(2, {Rule{0, 0, 1, 0, Move::Stay}});  // writes a blank, halts in state 1
  Trace t = trace(m, "", 16);
  REQUIRE(t.applied() == 1);
  CHECK(!step_min_window(t, 0).has_value());
  CcStarResult r = cc_star(m, "");
  CHECK(r.status == CcStarResult::Status::Irreducible);
  CHECK(cc_star_bsearch(m, "").status == CcStarResult::Status::Irreducible);
}

TEST_CASE("cc-star of the right-mover equals the far-edge radius") {
  Tm m(1, {Rule{0, 1, 0, 1, Move::Right}});
  CcStarResult r = cc_star(m, "111111111");
  REQUIRE(r.ok());
  CHECK(r.radius == 9);
  CHECK(r.witness_step == 8);
  CHECK(cc_star_bsearch(m, "111111111").radius == 9);
}

TEST_CASE("non-halting machines report the bound") {
  Tm looper = decode_rule_index("1, 0, 0");
  CcOptions opts;
  opts.max_steps = 1000;
  CHECK(cc_star(looper, "", CcMode::Strict, opts).status ==
        CcStarResult::Status::BoundExceeded);
}

TEST_CASE("zero-rule machine has radius zero") {
  CcStarResult r = cc_star(Tm{}, "");
  REQUIRE(r.ok());
  CHECK(r.radius == 0);
}

TEST_CASE("benchmark rows: ones14 and ones21") {
  CcStarResult a = cc_star(machine_named("ones14"), "");
  REQUIRE(a.ok());
  CHECK(a.radius == 7);
  CcStarResult b = cc_star(machine_named("ones21"), "");
  REQUIRE(b.ok());
  CHECK(b.radius == 12);
}

TEST_CASE("binary search agrees with the per-step algorithm on a benchmark row") {
  CcStarResult searched = cc_star_bsearch(machine_named("ones26"), "");
  REQUIRE(searched.ok());
  CHECK(searched.radius == 24);
}

TEST_CASE("strict equals brute force, binary search and the per-step maximum") {
  std::mt19937_64 rng(606);
  int machines = 0;
  while (machines < 30) {
    auto m = oracle::random_halting_machine(rng, 4, 150);
    if (!m) continue;
    Trace t = trace(*m, "", 200);
    if (t.ones() == 0) continue;
    ++machines;
    CAPTURE(encode_rule_index(*m));
    auto expected = brute_cc_star(*m, 200);
    CcStarResult strict = cc_star(*m, "");
    if (!expected) {
      CHECK(strict.status == CcStarResult::Status::Irreducible);
      continue;
    }
    REQUIRE(strict.ok());
    CHECK(strict.radius == *expected);
    CHECK(cc_star_bsearch(*m, "").radius == strict.radius);
    long per_step_max = 0;
    for (std::uint64_t i = 0; i < t.applied(); ++i) {
      auto s = step_min_window(t, i);
      REQUIRE(s.has_value());
      per_step_max = std::max(per_step_max, *s);
    }
    CHECK(per_step_max == strict.radius);
  }
}

TEST_CASE("global mode never exceeds strict mode") {
  std::mt19937_64 rng(777);
  int machines = 0;
  while (machines < 25) {
    auto m = oracle::random_halting_machine(rng, 4, 150);
    if (!m) continue;
    Trace t = trace(*m, "", 200);
    if (t.ones() == 0) continue;
    ++machines;
    CcStarResult strict = cc_star(*m, "");
    CcStarResult global = cc_star(*m, "", CcMode::Global);
    if (!strict.ok()) continue;
    REQUIRE(global.ok());
    CHECK(global.radius <= strict.radius);
    CHECK(cc_star_bsearch(*m, "", CcMode::Global).radius == global.radius);
    // A window-stream learner pools candidate sets across the trace, so
    // whenever it pins every key at the strict radius it recovers exactly
    // the rules that ran.
    LearnResult at = reconstruct_trace(t, static_cast<int>(strict.radius));
    if (at.unique) CHECK(at.machine == used_rules(t));
  }
}

TEST_CASE("closure at the strict radius for a benchmark machine") {
  Tm m = machine_named("ones14");
  CcStarResult r = cc_star(m, "");
  REQUIRE(r.ok());
  Trace t = trace(m, "", 1 << 20);
  LearnResult at = reconstruct_trace(t, static_cast<int>(r.radius));
  CHECK(at.unique);
  CHECK(at.machine == m);
  // Strict uniqueness fails one below: the witness step stays ambiguous.
  auto configs_at = [&](std::uint64_t i) {
    Simulation sim(m, "");
    while (sim.applied() < i) sim.advance();
    Configuration c = sim.configuration();
    sim.advance();
    return std::make_pair(c, sim.configuration());
  };
  auto [ci, cn] = configs_at(r.witness_step);
  int below = static_cast<int>(r.radius) - 1;
  CHECK(candidates(window(ci, below), window(cn, below)).targets.size() > 1);
  CHECK(candidates(window(ci, static_cast<int>(r.radius)), window(cn, static_cast<int>(r.radius)))
            .targets.size() == 1);
}

TEST_CASE("the word-accelerated scan matches the reference scan step by step") {
  auto check_machine = [](const Tm& m, std::string_view input) {
    Simulation sim(m, input);
    Rule rule;
    while (sim.next_rule(rule)) {
      const Tape& tape = sim.tape();
      long cap = detail::saturation_cap(tape.head(), tape.leftmost(), tape.rightmost());
      auto view = [&tape](long pos) { return tape.read(pos); };
      detail::StepScan slow =
          detail::scan_step(view, tape.head(), move_offset(rule.move), rule.write, cap);
      detail::StepScan fast =
          detail::fast_scan_step(tape, move_offset(rule.move), rule.write, cap);
      for (int d = 0; d < 3; ++d) {
        CHECK(slow.kill[d] == fast.kill[d]);
        CHECK(slow.pinned_write[d] == fast.pinned_write[d]);
      }
      sim.advance();
      if (sim.applied() > 3000) break;
    }
  };
  std::mt19937_64 rng(8080);
  int machines = 0;
  while (machines < 40) {
    auto m = oracle::random_halting_machine(rng, 4, 200);
    if (!m) continue;
    ++machines;
    check_machine(*m, "");
  }
  check_machine(machine_named("ones160"), "");
  check_machine(Tm(1, {Rule{0, 1, 0, 1, Move::Right}}), "111111111");
}

TEST_CASE("shard count does not change the result") {
  Tm m = machine_named("ones21");
  CcOptions one;
  one.threads = 1;
  CcOptions many;
  many.threads = 5;
  CcStarResult a = cc_star(m, "", CcMode::Strict, one);
  CcStarResult b = cc_star(m, "", CcMode::Strict, many);
  CHECK(a.radius == b.radius);
  CHECK(a.witness_step == b.witness_step);
  CHECK(cc_star(m, "", CcMode::Global, one).radius == cc_star(m, "", CcMode::Global, many).radius);
}

TEST_CASE("report rows") {
  ComplexityReport r = report("ones26", machine_named("ones26"), "");
  CHECK(csv_row(r) == "ones26,264,26,,24");

  ComplexityReport looper = report("looper", decode_rule_index("1, 0, 0"), "",
                                   CcMode::Strict, CcOptions{.max_steps = 100, .threads = 0});
  CHECK(csv_row(looper) == "# looper: bound exceeded");

  ComplexityReport zero = report("empty", Tm{}, "");
  CHECK(csv_row(zero) == "empty,1,0,,0");
}
