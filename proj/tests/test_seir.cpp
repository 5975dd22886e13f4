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
#include <vector>

#include "doctest.h"
#include "seiropt/rng.hpp"

using seiropt::Rng;
using namespace seiropt::seir;

namespace {

// Independent straight-line recomputation of the published update formulas;
// deliberately separate from seir_step so the two act as cross-checks.
CompartmentState oracle_step(const CompartmentState& x, const EpidemicParams& p, double scale) {
  CompartmentState next;
  next.s = x.s - scale * p.beta * x.s * x.i;
  next.e = x.e + scale * p.beta * x.s * x.i - p.alpha * x.e;
  next.i = x.i + p.alpha * x.e - p.gamma * x.i;
  next.r = x.r + p.gamma * x.i;
  if (next.s < 0.0) next.s = 0.0;
  if (next.e < 0.0) next.e = 0.0;
  if (next.i < 0.0) next.i = 0.0;
  if (next.r > 1.0) next.r = 1.0;
  return next;
}

// Random state with a modest infectious share so no parameter draw below can
// push a compartment negative.
CompartmentState random_state(Rng& rng) {
  const double e = rng.unit() * 0.2;
  const double i = rng.unit() * 0.4;
  const double r = rng.unit() * (1.0 - e - i) * 0.5;
  return {1.0 - e - i - r, e, i, r};
}

EpidemicParams random_params(Rng& rng) {
  return {0.01 + rng.unit() * 0.99, 0.01 + rng.unit() * 0.99, 0.01 + rng.unit() * 0.99};
}

}  // namespace

TEST_CASE("seir_step leaves a fully susceptible population unchanged") {
  const CompartmentState x{1.0, 0.0, 0.0, 0.0};
  const EpidemicParams p{0.3, 1.7, 0.4};
  const CompartmentState next = seir_step(x, p, 1.0);
  CHECK(next.s == 1.0);
  CHECK(next.e == 0.0);
  CHECK(next.i == 0.0);
  CHECK(next.r == 0.0);
}

TEST_CASE("seir_step matches the hand-computed single application") {
  const CompartmentState x{0.9, 0.0, 0.1, 0.0};
  const EpidemicParams p{0.2, 2.0, 0.2};
  const CompartmentState next = seir_step(x, p, 1.0);
  CHECK(next.s == doctest::Approx(0.72).epsilon(1e-12));
  CHECK(next.e == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(next.i == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(next.r == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("seir_step accepts the degenerate zero-contact case") {
  const CompartmentState x{0.9, 0.0, 0.1, 0.0};
  const EpidemicParams p{0.2, 2.0, 0.2};
  const CompartmentState next = seir_step(x, p, 0.0);
  CHECK(next.s == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(next.e == 0.0);
  CHECK(next.i == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(next.r == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("seir_step agrees with the independent oracle on random inputs") {
  Rng rng(20260808);
  for (int trial = 0; trial < 100; ++trial) {
    const CompartmentState x = random_state(rng);
    const EpidemicParams p = random_params(rng);
    const double scale = 0.01 + rng.unit() * 0.99;
    const CompartmentState got = seir_step(x, p, scale);
    const CompartmentState want = oracle_step(x, p, scale);
    CHECK(std::abs(got.s - want.s) < 1e-12);
    CHECK(std::abs(got.e - want.e) < 1e-12);
    CHECK(std::abs(got.i - want.i) < 1e-12);
    CHECK(std::abs(got.r - want.r) < 1e-12);
  }
}

TEST_CASE("seir_step validates inputs") {
  const EpidemicParams p{0.2, 2.0, 0.2};
  CHECK_THROWS_AS(seir_step({0.5, 0.5, 0.5, 0.5}, p, 1.0), InvalidStateError);  // sum 2
  CHECK_THROWS_AS(seir_step({-0.1, 0.5, 0.3, 0.3}, p, 1.0), InvalidStateError);
  CHECK_THROWS_AS(seir_step({0.9, 0.0, 0.1, 0.0}, p, 1.5), InvalidStateError);
  CHECK_THROWS_AS(seir_step({0.9, 0.0, 0.1, 0.0}, p, -0.1), InvalidStateError);
  CHECK_THROWS_AS(seir_step({0.9, 0.0, 0.1, 0.0}, {0.0, 2.0, 0.2}, 1.0), InvalidStateError);
  CHECK_THROWS_AS(seir_step({0.9, 0.0, 0.1, 0.0}, {1.2, 2.0, 0.2}, 1.0), InvalidStateError);
}

TEST_CASE("seir_step surfaces numerical blowup instead of clamping it away") {
  // beta*s*i = 8*0.5*0.5 = 2 > s, so s' would be -1.5.
  CHECK_THROWS_AS(seir_step({0.5, 0.0, 0.5, 0.0}, {0.2, 8.0, 0.2}, 1.0), NumericalBlowupError);
}

TEST_CASE("simulate_trajectory reproduces two manual steps") {
  const double e0 = 1000.0 / 126'000'000.0;
  const CompartmentState initial{1.0 - e0, e0, 0.0, 0.0};
  const EpidemicParams p{0.1923, 0.4482, 0.1724};
  const std::vector<double> scales{1.0, 1.0};
  const auto traj = simulate_trajectory(initial, p, scales);
  REQUIRE(traj.size() == 3);
  const CompartmentState one = seir_step(initial, p, 1.0);
  const CompartmentState two = seir_step(one, p, 1.0);
  CHECK(traj[0].s == initial.s);
  CHECK(traj[1].s == one.s);
  CHECK(traj[1].e == one.e);
  CHECK(traj[2].i == two.i);
  CHECK(traj[2].r == two.r);
}

TEST_CASE("simulate_trajectory: unmitigated fast epidemic infects nearly everyone by day 60") {
  const double i0 = 10'000.0 / 50'000'000.0;
  const CompartmentState initial{1.0 - i0, 0.0, i0, 0.0};
  const EpidemicParams p{0.2, 2.0, 0.2};
  const std::vector<double> scales(60, 1.0);
  const auto traj = simulate_trajectory(initial, p, scales);
  REQUIRE(traj.size() == 61);
  CHECK(traj.back().s < 0.05);
}

TEST_CASE("simulate_trajectory is a fixed point without an infectious seed") {
  const CompartmentState initial{0.7, 0.0, 0.0, 0.3};
  const EpidemicParams p{0.3, 1.1, 0.4};
  const std::vector<double> scales(3, 0.8);
  const auto traj = simulate_trajectory(initial, p, scales);
  for (const CompartmentState& st : traj) {
    CHECK(st.s == initial.s);
    CHECK(st.e == 0.0);
    CHECK(st.i == 0.0);
    CHECK(st.r == initial.r);
  }
}

TEST_CASE("simulate_trajectory rejects empty and non-positive scales") {
  const CompartmentState initial{0.9, 0.0, 0.1, 0.0};
  const EpidemicParams p{0.2, 2.0, 0.2};
  CHECK_THROWS_AS(simulate_trajectory(initial, p, {}), InvalidStateError);
  const std::vector<double> scales{1.0, 0.0, 1.0};
  CHECK_THROWS_AS(simulate_trajectory(initial, p, scales), InvalidStateError);
}

TEST_CASE("simulate_trajectory attaches the failing day to blowups") {
  const CompartmentState initial{0.5, 0.0, 0.5, 0.0};
  const EpidemicParams p{0.2, 8.0, 0.2};
  const std::vector<double> scales(5, 1.0);
  try {
    simulate_trajectory(initial, p, scales);
    FAIL("expected NumericalBlowupError");
  } catch (const NumericalBlowupError& err) {
    CHECK(err.day() == 1);
  }
}

TEST_CASE("conservation, monotonicity, and scale ordering hold along random trajectories") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    // beta <= 1 keeps any 200-day trajectory inside [0, 1].
    const EpidemicParams p{0.05 + rng.unit() * 0.95, 0.05 + rng.unit() * 0.95,
                           0.05 + rng.unit() * 0.95};
    const double e0 = rng.unit() * 0.05;
    const double i0 = rng.unit() * 0.05;
    const CompartmentState initial{1.0 - e0 - i0, e0, i0, 0.0};
    std::vector<double> scales(200);
    for (double& s : scales) s = 0.1 + rng.unit() * 0.9;
    const auto traj = simulate_trajectory(initial, p, scales);
    for (std::size_t d = 0; d < traj.size(); ++d) {
      CHECK(std::abs(traj[d].sum() - 1.0) < 1e-9);
      if (d > 0) {
        CHECK(traj[d].r >= traj[d - 1].r);
        CHECK(traj[d].s <= traj[d - 1].s);
      }
    }
    // one-step scale monotonicity at a random day
    const CompartmentState& x = traj[rng.below(traj.size())];
    const double lo = 0.1 + rng.unit() * 0.4;
    const double hi = lo + rng.unit() * (1.0 - lo);
    CHECK(seir_step(x, p, lo).s >= seir_step(x, p, hi).s);
  }
}
