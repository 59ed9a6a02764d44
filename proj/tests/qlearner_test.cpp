#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "tmlab/codec.hpp"
#include "tmlab/qlearner.hpp"
#include "tmlab/simulator.hpp"

using namespace tmlab;

namespace {

Tm machine_named(const std::string& name) {
  for (auto& nm : load_machine_file(TMLAB_MACHINES_FILE))
    if (nm.name == name) return nm.machine;
  throw std::runtime_error("no such machine: " + name);
}

}  // namespace

TEST_CASE("action ids follow the fixed (to_state, write, move) order") {
  CHECK(action_target(0) == RuleTarget{0, 0, Move::Left});
  CHECK(action_target(1) == RuleTarget{0, 0, Move::Stay});
  CHECK(action_target(5) == RuleTarget{0, 1, Move::Right});
  CHECK(action_target(6) == RuleTarget{1, 0, Move::Left});
  for (int a = 0; a < 36; ++a) CHECK(action_id(action_target(a)) == a);
}

TEST_CASE("training is deterministic under a fixed seed") {
  Tm m = machine_named("ones26");
  auto windows = collect_windows(trace(m, "", 1 << 20), 4);
  QParams p;
  p.seed = 7;
  LearningCurve a = train(windows, p);
  LearningCurve b = train(windows, p);
  CHECK(a.converged == b.converged);
  CHECK(a.interactions == b.interactions);
  CHECK(a.episode_errors == b.episode_errors);
}

TEST_CASE("a pre-trained table replays greedily without errors") {
  Tm m = machine_named("ones26");
  auto windows = collect_windows(trace(m, "", 1 << 20), 4);
  QTable table;
  LearningCurve first = train(windows, {}, &table);
  REQUIRE(first.converged);
  CHECK(greedy_errors(windows, table) == 0);

  // Re-training from the converged table with exploration off: the first
  // episode is clean, so the learning cost is exactly the trace length.
  QParams greedy;
  greedy.epsilon0 = 0.0;
  LearningCurve second = train(windows, greedy, &table);
  CHECK(second.converged);
  CHECK(second.episode_errors.size() == 1);
  CHECK(second.episode_errors[0] == 0);
  CHECK(second.interactions == windows.size() - 1);
}

TEST_CASE("q-values stay inside the reward bound") {
  Tm m = machine_named("ones14");
  auto windows = collect_windows(trace(m, "", 1 << 20), 4);
  QParams p;
  QTable table;
  train(windows, p, &table);
  double bound = 1.0 / (1.0 - p.gamma) + 1e-9;
  for (const auto& [key, row] : table.rows)
    for (double v : row) CHECK(std::abs(v) <= bound);
}

TEST_CASE("learning cost of the zero-rule machine is zero") {
  CcOutcome r = learning_cost(Tm{}, "");
  CHECK(r.converged);
  CHECK(r.interactions == 0);
  CHECK(r.trace_steps == 0);
}

TEST_CASE("learning cost converges on the two smallest benchmark machines") {
  for (const char* name : {"ones26", "ones14"}) {
    CcOutcome r = learning_cost(machine_named(name), "");
    CAPTURE(name);
    CHECK(r.converged);
    CHECK(r.interactions >= r.trace_steps);  // at least one full episode
  }
}

TEST_CASE("non-convergence is reported, not thrown") {
  Tm m = machine_named("ones26");
  auto windows = collect_windows(trace(m, "", 1 << 20), 4);
  QParams p;
  p.episode_bound = 1;
  p.epsilon0 = 1.0;
  p.epsilon_decay = 1.0;  // pure exploration never goes clean
  LearningCurve c = train(windows, p);
  CHECK(!c.converged);
  CHECK(c.episode_errors.size() == 1);
}

TEST_CASE("bad hyperparameters are rejected") {
  std::vector<WindowConfig> none;
  QParams p;
  p.alpha = 0.0;
  CHECK_THROWS_AS(train(none, p), std::invalid_argument);
  p = {};
  p.gamma = 1.0;
  CHECK_THROWS_AS(train(none, p), std::invalid_argument);
}

TEST_CASE("curve csv shape") {
  Tm m(2, {Rule{0, 0, 1, 1, Move::Right}, Rule{1, 0, 0, 1, Move::Left}});
  auto windows = collect_windows(trace(m, "", 16), 2);
  QParams p;
  p.seed = 3;
  LearningCurve c = train(windows, p);
  std::ostringstream out;
  write_curve_csv(c, out);
  std::string text = out.str();
  CHECK(text.rfind("episode,errors,cumulative_interactions\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(c.episode_errors.size()) + 1);
}
