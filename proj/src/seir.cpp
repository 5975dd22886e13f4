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

#include "seiropt/seir.hpp"

#include <cmath>

namespace seiropt::seir {
namespace {

constexpr double kClampTolerance = 1e-12;
constexpr double kSumTolerance = 1e-9;

double clamp_field(double value, const char* name) {
  if (value < 0.0) {
    if (value < -kClampTolerance) {
      throw NumericalBlowupError(std::string("compartment ") + name +
                                 " fell below zero: " + std::to_string(value));
    }
    return 0.0;
  }
  if (value > 1.0) {
    if (value > 1.0 + kClampTolerance) {
      throw NumericalBlowupError(std::string("compartment ") + name +
                                 " exceeded one: " + std::to_string(value));
    }
    return 1.0;
  }
  return value;
}

}  // namespace

void validate(const EpidemicParams& params) {
  if (!std::isfinite(params.alpha) || !std::isfinite(params.beta) || !std::isfinite(params.gamma)) {
    throw InvalidStateError("epidemic rates must be finite");
  }
  if (!(params.alpha > 0.0) || !(params.beta > 0.0) || !(params.gamma > 0.0)) {
    throw InvalidStateError("epidemic rates must be positive");
  }
  if (params.alpha > 1.0 || params.gamma > 1.0) {
    throw InvalidStateError("alpha and gamma are per-day rates and must stay <= 1");
  }
}

void validate(const CompartmentState& state) {
  const double fields[4] = {state.s, state.e, state.i, state.r};
  const char* names[4] = {"s", "e", "i", "r"};
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(fields[k]) || fields[k] < 0.0 || fields[k] > 1.0) {
      throw InvalidStateError(std::string("compartment ") + names[k] +
                              " outside [0, 1]: " + std::to_string(fields[k]));
    }
  }
  if (std::abs(state.sum() - 1.0) > kSumTolerance) {
    throw InvalidStateError("compartments must sum to 1, got " + std::to_string(state.sum()));
  }
}

CompartmentState seir_step(const CompartmentState& state, const EpidemicParams& params,
                           double contact_scale) {
  validate(params);
  validate(state);
  if (!(contact_scale >= 0.0) || contact_scale > 1.0) {
    throw InvalidStateError("contact_scale must lie in [0, 1], got " +
                            std::to_string(contact_scale));
  }

  const double new_exposures = contact_scale * params.beta * state.s * state.i;
  const double new_infectious = params.alpha * state.e;
  const double new_recoveries = params.gamma * state.i;

  CompartmentState next;
  next.s = clamp_field(state.s - new_exposures, "s");
  next.e = clamp_field(state.e + new_exposures - new_infectious, "e");
  next.i = clamp_field(state.i + new_infectious - new_recoveries, "i");
  next.r = clamp_field(state.r + new_recoveries, "r");
  return next;
}

std::vector<CompartmentState> simulate_trajectory(const CompartmentState& initial,
                                                  const EpidemicParams& params,
                                                  std::span<const double> contact_scales) {
  if (contact_scales.empty()) {
    throw InvalidStateError("a trajectory needs at least one day");
  }
  std::vector<CompartmentState> out;
  out.reserve(contact_scales.size() + 1);
  out.push_back(initial);
  for (std::size_t d = 0; d < contact_scales.size(); ++d) {
    const int day = static_cast<int>(d) + 1;
    if (!(contact_scales[d] > 0.0)) {
      throw InvalidStateError("contact scale must be positive on day " + std::to_string(day));
    }
    try {
      out.push_back(seir_step(out.back(), params, contact_scales[d]));
    } catch (const NumericalBlowupError& err) {
      throw NumericalBlowupError(std::string(err.what()) + " on day " + std::to_string(day), day);
    } catch (const InvalidStateError& err) {
      throw InvalidStateError(std::string(err.what()) + " on day " + std::to_string(day));
    }
  }
  return out;
}

}  // namespace seiropt::seir
