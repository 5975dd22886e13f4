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

#include "seiropt/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seiropt::scenario {
namespace {

void check_day(const Scenario& sc, int day) {
  if (day < 1 || day > sc.horizon) {
    throw std::out_of_range("day " + std::to_string(day) + " outside 1.." +
                            std::to_string(sc.horizon));
  }
}

void check_phase(int phase_index) {
  if (phase_index < 0 || phase_index >= kPhaseCount) {
    throw std::out_of_range("phase index " + std::to_string(phase_index) + " outside 0.." +
                            std::to_string(kPhaseCount - 1));
  }
}

}  // namespace

Scenario Scenario::experiment(int id) {
  Scenario sc;
  const double e0 = 1000.0 / sc.population;
  sc.initial = {1.0 - e0, e0, 0.0, 0.0};
  switch (id) {
    case 1:
      break;
    case 2:
      sc.beds_per_thousand = {1.5, 0.5, sc.horizon};
      sc.theta = {1.0, 0.5, sc.horizon};
      break;
    case 3:
      sc.beds_per_thousand = {1.5, 0.5, sc.horizon};
      sc.pattern_enabled = true;
      break;
    default:
      throw std::invalid_argument("experiment id must be 1, 2, or 3");
  }
  return sc;
}

void validate(const Scenario& sc) {
  if (sc.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(sc.population > 0.0)) throw std::invalid_argument("population must be positive");
  seir::validate(sc.params);
  seir::validate(sc.initial);
  if (!(sc.icu_fraction > 0.0) || sc.icu_fraction > 1.0) {
    throw std::invalid_argument("icu_fraction must lie in (0, 1]");
  }
  if (!(sc.bed_penalty < 0.0)) throw std::invalid_argument("bed_penalty must be negative");
  if (!(sc.pattern_penalty < 0.0)) throw std::invalid_argument("pattern_penalty must be negative");
  for (int k = 0; k < kPhaseCount; ++k) {
    const Phase& p = sc.phases[k];
    if (p.index != k) throw std::invalid_argument("phase table must be indexed 0..3 in order");
    if (!(p.delta > 0.0) || p.delta > 1.0) {
      throw std::invalid_argument("phases[" + std::to_string(k) + "].delta must lie in (0, 1]");
    }
    if (k > 0) {
      if (!(p.delta > sc.phases[k - 1].delta)) {
        throw std::invalid_argument("phase deltas must be strictly increasing");
      }
      if (!(p.daily_reward > sc.phases[k - 1].daily_reward)) {
        throw std::invalid_argument("phase rewards must be strictly increasing");
      }
    }
  }
  for (const Schedule* s : {&sc.theta, &sc.beds_per_thousand}) {
    if (s->horizon != sc.horizon) {
      throw std::invalid_argument("schedule horizon must match the scenario horizon");
    }
  }
  if (!(sc.theta.start_value > 0.0) || sc.theta.start_value > 1.0 ||
      !(sc.theta.end_value > 0.0) || sc.theta.end_value > 1.0) {
    throw std::invalid_argument("theta values must lie in (0, 1]");
  }
  if (sc.beds_per_thousand.start_value < 0.0 || sc.beds_per_thousand.end_value < 0.0) {
    throw std::invalid_argument("bed capacity cannot be negative");
  }
}

void validate_actions(const Scenario& sc, const ActionSequence& actions) {
  if (static_cast<int>(actions.size()) != sc.horizon) {
    throw std::invalid_argument("action sequence length " + std::to_string(actions.size()) +
                                " does not match horizon " + std::to_string(sc.horizon));
  }
  for (std::size_t d = 0; d < actions.size(); ++d) {
    if (actions[d] < 0 || actions[d] >= kPhaseCount) {
      throw std::invalid_argument("action out of range on day " + std::to_string(d + 1));
    }
  }
}

DfaState dfa_step(DfaState state, int symbol) {
  check_phase(symbol);
  using S = DfaState;
  static constexpr S kTable[6][kPhaseCount] = {
      /* P0 */ {S::kP0, S::kP1, S::kP2, S::kP3},
      /* P1 */ {S::kP4, S::kP1, S::kP2, S::kP3},
      /* P2 */ {S::kP4, S::kRej, S::kP2, S::kP3},
      /* P3 */ {S::kP4, S::kRej, S::kRej, S::kP3},
      /* P4 */ {S::kP4, S::kRej, S::kRej, S::kRej},
      /* Rej*/ {S::kRej, S::kRej, S::kRej, S::kRej},
  };
  return kTable[static_cast<int>(state)][symbol];
}

const char* dfa_name(DfaState state) {
  switch (state) {
    case DfaState::kP0: return "P0";
    case DfaState::kP1: return "P1";
    case DfaState::kP2: return "P2";
    case DfaState::kP3: return "P3";
    case DfaState::kP4: return "P4";
    case DfaState::kRej: return "REJ";
  }
  return "?";
}

double contact_scale_for_day(const Scenario& sc, int phase_index, int day) {
  check_phase(phase_index);
  check_day(sc, day);
  return sc.phases[phase_index].delta * sc.theta.value(day);
}

double beds_fraction(const Scenario& sc, int day) {
  check_day(sc, day);
  return sc.beds_per_thousand.value(day) / 1000.0;
}

double daily_reward(const Scenario& sc, int phase_index,
                    const seir::CompartmentState& state_after_step, int day, DfaState dfa_after) {
  check_phase(phase_index);
  check_day(sc, day);
  if (sc.pattern_enabled && dfa_after == DfaState::kRej) return sc.pattern_penalty;
  if (sc.icu_fraction * state_after_step.i > beds_fraction(sc, day)) return sc.bed_penalty;
  return sc.phases[phase_index].daily_reward;
}

RolloutEnv::RolloutEnv(const Scenario& sc) : sc_(&sc) {
  validate(sc);
  reset();
}

void RolloutEnv::reset() {
  state_ = sc_->initial;
  dfa_ = DfaState::kP0;
  day_ = 0;
  pattern_break_day_.reset();
  infectious_.clear();
  infectious_.reserve(sc_->horizon + 1);
  infectious_.push_back(state_.i);
}

RolloutEnv::DayOutcome RolloutEnv::step(int action) {
  if (done()) throw std::logic_error("episode already finished");
  check_phase(action);
  const int day = day_ + 1;
  const double scale = contact_scale_for_day(*sc_, action, day);
  seir::CompartmentState next;
  try {
    next = seir::seir_step(state_, sc_->params, scale);
  } catch (const seir::NumericalBlowupError& err) {
    throw seir::NumericalBlowupError(std::string(err.what()) + " on day " + std::to_string(day),
                                     day);
  }
  if (sc_->pattern_enabled) {
    dfa_ = dfa_step(dfa_, action);
    if (dfa_ == DfaState::kRej && !pattern_break_day_) pattern_break_day_ = day;
  }
  state_ = next;
  day_ = day;
  infectious_.push_back(next.i);

  DayOutcome out;
  out.icu_violation = sc_->icu_fraction * next.i > beds_fraction(*sc_, day);
  out.reward = daily_reward(*sc_, action, next, day, dfa_);
  return out;
}

EvaluationResult evaluate_sequence(const Scenario& sc, const ActionSequence& actions) {
  validate_actions(sc, actions);
  RolloutEnv env(sc);
  EvaluationResult res;
  res.daily_rewards.reserve(sc.horizon);
  res.trajectory.reserve(sc.horizon + 1);
  res.trajectory.push_back(env.state());
  for (int d = 0; d < sc.horizon; ++d) {
    const RolloutEnv::DayOutcome out = env.step(actions[d]);
    res.daily_rewards.push_back(out.reward);
    res.trajectory.push_back(env.state());
    if (out.icu_violation) res.violation_days.push_back(d + 1);
    res.total_reward += out.reward;
  }
  res.pattern_break_day = env.pattern_break_day();
  return res;
}

}  // namespace seiropt::scenario
