#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tmlab/configuration.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/tape.hpp"

namespace tmlab {

// How run statistics count a halting computation: the number of
// configurations visited (applied rules + 1) or the applied rules alone.
// Configurations is the locked default; see the bundled benchmark suite.
enum class StepConvention { Configurations, AppliedRules };

// Outcome of one transition attempt on a full configuration.
struct StepResult {
  bool applied = false;
  Configuration next;  // valid when applied
  Rule rule;           // the rule that fired
};
StepResult step(const Tm& machine, const Configuration& config);

// Resumable simulation engine. Owns its tape exclusively; copying yields an
// independent checkpoint that can be advanced separately.
class Simulation {
 public:
  Simulation(const Tm& machine, std::string_view input) : machine_(machine), tape_(input) {}

  bool halted() const { return machine_.find(state_, tape_.at_head()) == nullptr; }

  // The rule about to fire; false when halted.
  bool next_rule(Rule& out) const {
    const RuleTarget* t = machine_.find(state_, tape_.at_head());
    if (!t) return false;
    out = Rule{state_, tape_.at_head(), t->to_state, t->write, t->move};
    return true;
  }

  bool advance() {
    const RuleTarget* t = machine_.find(state_, tape_.at_head());
    if (!t) return false;
    tape_.write_at_head(t->write);
    tape_.move_head(move_offset(t->move));
    state_ = t->to_state;
    ++applied_;
    return true;
  }

  int state() const { return state_; }
  const Tape& tape() const { return tape_; }
  std::uint64_t applied() const { return applied_; }
  Configuration configuration() const { return make_configuration(tape_, state_); }

 private:
  Tm machine_;
  Tape tape_;
  int state_ = 0;
  std::uint64_t applied_ = 0;
};

struct RunResult {
  bool halted = false;  // false means the step bound was exceeded
  std::uint64_t applied = 0;
  std::uint64_t ones = 0;
  Configuration final_config;

  std::uint64_t steps(StepConvention c = StepConvention::Configurations) const {
    return c == StepConvention::Configurations ? applied + 1 : applied;
  }
};

// Runs until the machine halts or max_steps rules have been applied.
RunResult run(const Tm& machine, std::string_view input, std::uint64_t max_steps);

// A replayable trace: summary statistics are computed once, the configuration
// sequence is re-generated on demand so that long runs are never materialized.
class Trace {
 public:
  Trace(const Tm& machine, std::string_view input, std::uint64_t max_steps);

  const Tm& machine() const { return machine_; }
  const std::string& input() const { return input_; }
  std::uint64_t max_steps() const { return max_steps_; }
  bool halted() const { return halted_; }
  std::uint64_t applied() const { return applied_; }
  std::uint64_t config_count() const { return applied_ + 1; }
  std::uint64_t ones() const { return ones_; }
  std::uint64_t steps(StepConvention c = StepConvention::Configurations) const {
    return c == StepConvention::Configurations ? applied_ + 1 : applied_;
  }

  // fn(const Simulation& before, const Rule& firing), once per applied step.
  template <class Fn>
  void for_each_step(Fn&& fn) const {
    Simulation sim(machine_, input_);
    Rule rule;
    for (std::uint64_t i = 0; i < applied_; ++i) {
      sim.next_rule(rule);
      fn(static_cast<const Simulation&>(sim), rule);
      sim.advance();
    }
  }

  // fn(const Configuration&) for c_0 .. c_m.
  template <class Fn>
  void for_each_config(Fn&& fn) const {
    Simulation sim(machine_, input_);
    fn(sim.configuration());
    for (std::uint64_t i = 0; i < applied_; ++i) {
      sim.advance();
      fn(sim.configuration());
    }
  }

 private:
  Tm machine_;
  std::string input_;
  std::uint64_t max_steps_ = 0;
  bool halted_ = false;
  std::uint64_t applied_ = 0;
  std::uint64_t ones_ = 0;
};

Trace trace(const Tm& machine, std::string_view input, std::uint64_t max_steps);

// Streams window(c_i, radius) for every configuration of the trace.
template <class Fn>
void window_stream(const Trace& t, int radius, Fn&& fn) {
  t.for_each_config([&](const Configuration& c) { fn(window(c, radius)); });
}

// Convenience materializers for small traces (tests, the Q-learner).
std::vector<Configuration> collect_configs(const Trace& t);
std::vector<WindowConfig> collect_windows(const Trace& t, int radius);

// CSV export: step,state,head_offset,read,write,move rows plus a summary line.
void write_trace_csv(const Trace& t, std::ostream& out);

}  // namespace tmlab
