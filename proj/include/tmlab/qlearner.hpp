#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tmlab/configuration.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/simulator.hpp"

namespace tmlab {

// Hyperparameters of the tabular predictor. Identical params and windows give
// an identical run, bit for bit.
struct QParams {
  double alpha = 0.1;          // learning rate
  double gamma = 0.9;          // discount
  double epsilon0 = 0.3;       // initial exploration rate
  double epsilon_decay = 0.95; // per-episode multiplier
  std::uint64_t seed = 1;
  int convergence = 1;         // consecutive error-free episodes required
  int episode_bound = 1000;
};

// State: the rendered window. Action: a (to_state, write, move) triple drawn
// from the states seen so far plus one fresh state, in fixed
// (to_state, write, move) order for tie-breaking. Unseen values start at the
// discounted reward bound, so every untried action gets disproven before the
// policy can settle.
struct QTable {
  std::unordered_map<std::string, std::vector<double>> rows;
  int max_state_seen = 0;
  double init_value = 0.0;

  int action_count() const { return 6 * (max_state_seen + 2); }
  std::vector<double>& row(const std::string& key);
};

RuleTarget action_target(int action_id);
int action_id(const RuleTarget& t);

struct LearningCurve {
  std::vector<std::uint32_t> episode_errors;
  std::uint64_t interactions = 0;  // the learning-time measure once converged
  bool converged = false;
};

// Replays the window stream episode by episode. Each step the agent proposes
// a rule for the current window; the proposal counts as correct when it is
// consistent with the observed next window (reward +1, else -1), and the
// Q-value is updated with the standard one-step rule. Training stops after
// `convergence` consecutive clean episodes or at the episode bound.
LearningCurve train(std::span<const WindowConfig> windows, const QParams& params = {},
                    QTable* table = nullptr);

// Prediction errors of the greedy policy over one replay, no learning.
std::uint32_t greedy_errors(std::span<const WindowConfig> windows, QTable& table);

struct CcOutcome {
  std::uint64_t interactions = 0;
  bool converged = false;
  std::uint64_t trace_steps = 0;  // applied rules in the observed trace
};

// trace -> windows -> train; radius 4 mirrors the observation width the
// original experiments ran with.
CcOutcome learning_cost(const Tm& machine, std::string_view input, int radius = 4,
                        const QParams& params = {},
                        std::uint64_t max_steps = std::uint64_t{1} << 26);

// CSV: episode,errors,cumulative_interactions.
void write_curve_csv(const LearningCurve& curve, std::ostream& out);

}  // namespace tmlab
