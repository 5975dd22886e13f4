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

#ifndef SEIROPT_SEIR_HPP_
#define SEIROPT_SEIR_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seiropt::seir {

// Per-day rates of the discrete SEIR model. alpha and gamma are inverse
// periods and must stay <= 1 for a one-day step; beta may exceed 1 for
// fast-spreading diseases.
struct EpidemicParams {
  double alpha = 0.0;  // inverse incubation period
  double beta = 0.0;   // contact rate
  double gamma = 0.0;  // inverse infectious period

  double r0() const { return beta / gamma; }
};

// Population fractions for one day; s + e + i + r stays 1 along a trajectory.
struct CompartmentState {
  double s = 1.0;
  double e = 0.0;
  double i = 0.0;
  double r = 0.0;

  double sum() const { return s + e + i + r; }
};

class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A compartment left [0,1] by more than float noise; `day` is 1-based when
// raised from a trajectory, 0 for a bare step.
class NumericalBlowupError : public std::runtime_error {
 public:
  explicit NumericalBlowupError(const std::string& what, int day = 0)
      : std::runtime_error(what), day_(day) {}
  int day() const { return day_; }

 private:
  int day_;
};

void validate(const EpidemicParams& params);
void validate(const CompartmentState& state);

// One forward-Euler day:
//   s' = s - contact_scale*beta*s*i
//   e' = e + contact_scale*beta*s*i - alpha*e
//   i' = i + alpha*e - gamma*i
//   r' = r + gamma*i
// contact_scale carries the product of the confinement weight and the
// seasonal factor; 0 is accepted as the degenerate no-contact case. Fields
// driven just past [0,1] by float noise (within 1e-12) are clamped; anything
// larger raises NumericalBlowupError.
CompartmentState seir_step(const CompartmentState& state, const EpidemicParams& params,
                           double contact_scale);

// Element 0 is `initial`; element d is the state after day d. Every scale
// must lie in (0, 1]. Errors carry the failing 1-based day.
std::vector<CompartmentState> simulate_trajectory(const CompartmentState& initial,
                                                  const EpidemicParams& params,
                                                  std::span<const double> contact_scales);

}  // namespace seiropt::seir

#endif  // SEIROPT_SEIR_HPP_
