#include "tmlab/qlearner.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>

#include "tmlab/learner.hpp"

namespace tmlab {

std::vector<double>& QTable::row(const std::string& key) {
  std::vector<double>& r = rows[key];
  r.resize(static_cast<std::size_t>(action_count()), init_value);  // universe may have grown
  return r;
}

RuleTarget action_target(int action_id) {
  return {action_id / 6, static_cast<Symbol>((action_id % 6) / 3),
          static_cast<Move>(action_id % 3)};
}

int action_id(const RuleTarget& t) {
  return 6 * t.to_state + 3 * static_cast<int>(t.write) + static_cast<int>(t.move);
}

namespace {

// Explicit arithmetic keeps runs reproducible across standard libraries.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int argmax(const std::vector<double>& row) {
  int best = 0;
  for (int a = 1; a < static_cast<int>(row.size()); ++a)
    if (row[static_cast<std::size_t>(a)] > row[static_cast<std::size_t>(best)]) best = a;
  return best;
}

double max_value(const std::vector<double>& row) {
  return row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
}

}  // namespace

LearningCurve train(std::span<const WindowConfig> windows, const QParams& params, QTable* table) {
  if (params.alpha <= 0.0 || params.alpha > 1.0) throw std::invalid_argument("alpha in (0,1]");
  if (params.gamma < 0.0 || params.gamma >= 1.0) throw std::invalid_argument("gamma in [0,1)");
  QTable local;
  QTable& q = table ? *table : local;
  if (q.rows.empty()) q.init_value = 1.0 / (1.0 - params.gamma);
  std::mt19937_64 rng(params.seed);
  LearningCurve curve;
  double epsilon = params.epsilon0;
  int clean = 0;
  const std::size_t steps = windows.empty() ? 0 : windows.size() - 1;
  for (int episode = 0; episode < params.episode_bound; ++episode) {
    std::uint32_t errors = 0;
    for (std::size_t i = 0; i < steps; ++i) {
      const WindowConfig& w = windows[i];
      const WindowConfig& w_next = windows[i + 1];
      q.max_state_seen = std::max(q.max_state_seen, w.state);
      std::string key = render(w);
      std::vector<double>& row = q.row(key);
      int action;
      if (next_unit(rng) < epsilon)
        action = static_cast<int>(rng() % static_cast<std::uint64_t>(row.size()));
      else
        action = argmax(row);
      RuleTarget proposed = action_target(action);
      bool correct = window_consistent(w, w_next, proposed);
      double reward = correct ? 1.0 : -1.0;
      errors += correct ? 0 : 1;
      ++curve.interactions;
      q.max_state_seen = std::max(q.max_state_seen, w_next.state);
      double future = max_value(q.row(render(w_next)));
      std::vector<double>& row_again = q.row(key);  // row() may have resized
      double& value = row_again[static_cast<std::size_t>(action)];
      value += params.alpha * (reward + params.gamma * future - value);
    }
    curve.episode_errors.push_back(errors);
    epsilon *= params.epsilon_decay;
    clean = errors == 0 ? clean + 1 : 0;
    if (clean >= params.convergence) {
      curve.converged = true;
      break;
    }
  }
  return curve;
}

std::uint32_t greedy_errors(std::span<const WindowConfig> windows, QTable& q) {
  std::uint32_t errors = 0;
  for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
    q.max_state_seen = std::max(q.max_state_seen, windows[i].state);
    RuleTarget proposed = action_target(argmax(q.row(render(windows[i]))));
    if (!window_consistent(windows[i], windows[i + 1], proposed)) ++errors;
    q.max_state_seen = std::max(q.max_state_seen, windows[i + 1].state);
  }
  return errors;
}

CcOutcome learning_cost(const Tm& machine, std::string_view input, int radius,
                        const QParams& params, std::uint64_t max_steps) {
  Trace t = trace(machine, input, max_steps);
  if (!t.halted()) throw std::runtime_error("machine did not halt within the step bound");
  std::vector<WindowConfig> windows = collect_windows(t, radius);
  LearningCurve curve = train(windows, params);
  return {curve.interactions, curve.converged, t.applied()};
}

void write_curve_csv(const LearningCurve& curve, std::ostream& out) {
  out << "episode,errors,cumulative_interactions\n";
  std::uint64_t seen = 0;
  std::uint64_t per_episode = 0;
  // Every episode replays the same trace, so interactions split evenly.
  if (!curve.episode_errors.empty())
    per_episode = curve.interactions / curve.episode_errors.size();
  for (std::size_t e = 0; e < curve.episode_errors.size(); ++e) {
    seen += per_episode;
    out << e << ',' << curve.episode_errors[e] << ',' << seen << '\n';
  }
}

}  // namespace tmlab
