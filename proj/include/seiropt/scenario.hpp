// Copyright 2026 The seiropt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEIROPT_SCENARIO_HPP_
#define SEIROPT_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "seiropt/seir.hpp"

namespace seiropt::scenario {

inline constexpr int kPhaseCount = 4;

// One government action level. delta scales the contact rate; daily_reward is
// the economic output in billions for a day spent in this phase.
struct Phase {
  int index = 0;
  double delta = 1.0;
  double daily_reward = 10.0;
};

// Linear ramp with the endpoints pinned at day 1 and day `horizon`.
struct Schedule {
  double start_value = 1.0;
  double end_value = 1.0;
  int horizon = 1;

  double value(int day) const {
    if (horizon <= 1) return start_value;
    return start_value + (end_value - start_value) * static_cast<double>(day - 1) /
                             static_cast<double>(horizon - 1);
  }
};

// Everything an action sequence is judged against: epidemic parameters,
// phase table, capacity and seasonality schedules, and penalties.
struct Scenario {
  int horizon = 200;
  double population = 126'000'000.0;
  seir::EpidemicParams params{0.1923, 0.4482, 0.1724};
  seir::CompartmentState initial{1.0, 0.0, 0.0, 0.0};
  std::array<Phase, kPhaseCount> phases{{{0, 0.25, 4.0}, {1, 0.50, 6.0}, {2, 0.75, 8.0}, {3, 1.00, 10.0}}};
  Schedule theta{1.0, 1.0, 200};              // seasonal contact multiplier
  Schedule beds_per_thousand{1.5, 1.5, 200};  // hospital beds per 1000 inhabitants
  double icu_fraction = 0.05;                 // share of infectious needing an ICU bed
  double bed_penalty = -1000.0;               // billions, on any day ICU demand exceeds beds
  bool pattern_enabled = false;               // phase-ordering rule 0*1*2*3*0*
  double pattern_penalty = -10.0;             // billions per day once the pattern breaks

  // Canonical setups: 1 = constant beds and theta; 2 = beds 1.5 -> 0.5 with
  // theta 1 -> 0.5; 3 = beds 1.5 -> 0.5, theta constant, pattern rule on.
  static Scenario experiment(int id);
};

void validate(const Scenario& sc);

using ActionSequence = std::vector<int>;

void validate_actions(const Scenario& sc, const ActionSequence& actions);

// DFA deciding whether a phase prefix can still extend to a word of
// 0*1*2*3*0*. Rej is absorbing.
enum class DfaState : std::uint8_t { kP0, kP1, kP2, kP3, kP4, kRej };

DfaState dfa_step(DfaState state, int symbol);
const char* dfa_name(DfaState state);

struct EvaluationResult {
  double total_reward = 0.0;
  std::vector<double> daily_rewards;               // days 1..n
  std::vector<seir::CompartmentState> trajectory;  // days 0..n
  std::vector<int> violation_days;                 // 1-based days with ICU demand > beds
  std::optional<int> pattern_break_day;            // first day the DFA rejected
};

// delta(phase) * theta(day); days are 1-based.
double contact_scale_for_day(const Scenario& sc, int phase_index, int day);

// Bed capacity as a fraction of the population.
double beds_fraction(const Scenario& sc, int day);

// Pattern penalty if the DFA has rejected, else bed penalty if ICU demand
// exceeds capacity, else the phase's economic reward. `state_after_step` is
// the compartment state produced by the day's action.
double daily_reward(const Scenario& sc, int phase_index,
                    const seir::CompartmentState& state_after_step, int day, DfaState dfa_after);

// Day-by-day environment with exactly the semantics of evaluate_sequence;
// the optimizers drive it one action at a time.
class RolloutEnv {
 public:
  explicit RolloutEnv(const Scenario& sc);

  struct DayOutcome {
    double reward = 0.0;
    bool icu_violation = false;
  };

  DayOutcome step(int action);
  void reset();

  int day() const { return day_; }  // days completed
  bool done() const { return day_ >= sc_->horizon; }
  const seir::CompartmentState& state() const { return state_; }
  DfaState dfa() const { return dfa_; }
  std::optional<int> pattern_break_day() const { return pattern_break_day_; }

  // Entry d is the infectious fraction after day d; entry 0 the initial one.
  const std::vector<double>& infectious_history() const { return infectious_; }

 private:
  const Scenario* sc_;
  seir::CompartmentState state_;
  DfaState dfa_ = DfaState::kP0;
  int day_ = 0;
  std::optional<int> pattern_break_day_;
  std::vector<double> infectious_;
};

// Scores a full sequence. Deterministic: identical inputs give bit-identical
// results.
EvaluationResult evaluate_sequence(const Scenario& sc, const ActionSequence& actions);

}  // namespace seiropt::scenario

#endif  // SEIROPT_SCENARIO_HPP_
