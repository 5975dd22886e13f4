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

#include "seiropt/ga.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "seiropt/experiment.hpp"
#include "seiropt/rng.hpp"
#include "seiropt/scenario.hpp"

using seiropt::Rng;
using namespace seiropt::ga;
namespace scenario = seiropt::scenario;

namespace {

scenario::Scenario short_scenario(int horizon) {
  scenario::Scenario sc = scenario::Scenario::experiment(1);
  sc.horizon = horizon;
  sc.theta.horizon = horizon;
  sc.beds_per_thousand.horizon = horizon;
  return sc;
}

}  // namespace

TEST_CASE("init_population: shapes, alphabet, determinism, uniformity") {
  const scenario::Scenario sc = scenario::Scenario::experiment(1);
  GaConfig cfg;
  Rng rng_a(7);
  Rng rng_b(7);
  const Population a = init_population(cfg, sc, rng_a);
  const Population b = init_population(cfg, sc, rng_b);
  REQUIRE(a.size() == 100);
  CHECK(a == b);
  for (const auto& ind : a) {
    REQUIRE(ind.size() == 200);
    for (int g : ind) {
      CHECK(g >= 0);
      CHECK(g < 4);
    }
  }

  // symbol frequencies over a large draw stay near 25%
  GaConfig big = cfg;
  big.population_size = 10000;
  Rng rng_c(8);
  const Population large = init_population(big, sc, rng_c);
  std::array<long, 4> counts{0, 0, 0, 0};
  long total = 0;
  for (const auto& ind : large) {
    for (int g : ind) {
      ++counts[g];
      ++total;
    }
  }
  for (int s = 0; s < 4; ++s) {
    CHECK(std::abs(static_cast<double>(counts[s]) / total - 0.25) < 0.01);
  }
}

TEST_CASE("tournament_select: degenerate sizes and the analytic k=3 rate") {
  Population pop;
  std::vector<double> fitnesses;
  for (int k = 0; k < 10; ++k) {
    pop.push_back(scenario::ActionSequence(5, k % 4));
    fitnesses.push_back(1.0 + k);  // strictly increasing, index 9 is best
  }

  Rng rng(9);
  // k = population size always returns the global best
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(&tournament_select(pop, fitnesses, 10, rng) == &pop[9]);
  }

  // k = 1 is a uniform draw
  std::array<int, 10> counts{};
  for (int trial = 0; trial < 20000; ++trial) {
    const auto& winner = tournament_select(pop, fitnesses, 1, rng);
    for (int k = 0; k < 10; ++k) {
      if (&winner == &pop[k]) {
        ++counts[k];
        break;
      }
    }
  }
  for (int k = 0; k < 10; ++k) {
    CHECK(std::abs(counts[k] / 20000.0 - 0.1) < 0.02);
  }

  // with k=3 of 10 the best individual wins 1 - C(9,3)/C(10,3) = 0.3 of draws
  int best_wins = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    if (&tournament_select(pop, fitnesses, 3, rng) == &pop[9]) ++best_wins;
  }
  CHECK(std::abs(best_wins / 10000.0 - 0.3) < 0.02);

  CHECK_THROWS_AS(tournament_select({}, {}, 1, rng), std::invalid_argument);
  CHECK_THROWS_AS(tournament_select(pop, fitnesses, 11, rng), std::invalid_argument);
}

TEST_CASE("tournament_select breaks fitness ties by the lowest index") {
  Population pop;
  for (int k = 0; k < 4; ++k) pop.push_back(scenario::ActionSequence(3, k));
  const std::vector<double> fitnesses{5.0, 5.0, 5.0, 5.0};
  Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(&tournament_select(pop, fitnesses, 4, rng) == &pop[0]);
  }
}

TEST_CASE("uniform_crossover: identity cases and positional gene conservation") {
  Rng rng(11);
  const scenario::ActionSequence parent(50, 2);
  const auto same = uniform_crossover(parent, parent, 1.0, rng);
  CHECK(same.first == parent);
  CHECK(same.second == parent);

  scenario::ActionSequence a(50), b(50);
  for (int k = 0; k < 50; ++k) {
    a[k] = k % 4;
    b[k] = (k + 2) % 4;
  }
  const auto skipped = uniform_crossover(a, b, 0.0, rng);
  CHECK(skipped.first == a);
  CHECK(skipped.second == b);

  bool saw_swap = false;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [ca, cb] = uniform_crossover(a, b, 0.6, rng);
    for (int k = 0; k < 50; ++k) {
      // the multiset of genes at each position is preserved
      const bool keep = ca[k] == a[k] && cb[k] == b[k];
      const bool swap = ca[k] == b[k] && cb[k] == a[k];
      CHECK((keep || swap));
      saw_swap = saw_swap || swap;
    }
  }
  CHECK(saw_swap);

  CHECK_THROWS_AS(uniform_crossover(a, scenario::ActionSequence(10, 0), 0.5, rng),
                  std::invalid_argument);
}

TEST_CASE("mutate: gates are identities and the changed-gene rate matches theory") {
  Rng rng(12);
  const scenario::ActionSequence ind(200, 1);
  CHECK(mutate(ind, 0.0, 0.5, rng) == ind);
  CHECK(mutate(ind, 1.0, 0.0, rng) == ind);

  // E[changed genes] = 0.6 * 0.10 * 0.75 * 200 = 9 per individual
  long changed = 0;
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    const scenario::ActionSequence out = mutate(ind, 0.6, 0.10, rng);
    for (int k = 0; k < 200; ++k) {
      if (out[k] != ind[k]) ++changed;
    }
  }
  const double mean_changed = static_cast<double>(changed) / trials;
  CHECK(mean_changed > 9.0 * 0.95);
  CHECK(mean_changed < 9.0 * 1.05);
}

TEST_CASE("run_ga with zero generations equals random search over the same budget") {
  const scenario::Scenario sc = short_scenario(60);
  GaConfig cfg;
  cfg.generations = 0;
  cfg.rng_seed = 4242;
  const GaRunStats stats = run_ga(cfg, sc);
  REQUIRE(stats.best_fitness_per_generation.size() == 1);

  Rng rng(4242);
  const auto random_best = seiropt::harness::random_search(sc, cfg.population_size, rng);
  CHECK(stats.best_evaluation.total_reward == random_best.evaluation.total_reward);
  CHECK(stats.best_individual == random_best.actions);
}

TEST_CASE("run_ga: elitism keeps the curve non-decreasing and closure holds") {
  const scenario::Scenario sc = short_scenario(50);
  GaConfig cfg;
  cfg.population_size = 20;
  cfg.generations = 30;
  cfg.rng_seed = 5;
  const GaRunStats stats = run_ga(cfg, sc);
  REQUIRE(stats.best_fitness_per_generation.size() == 31);
  for (std::size_t g = 1; g < stats.best_fitness_per_generation.size(); ++g) {
    CHECK(stats.best_fitness_per_generation[g] >= stats.best_fitness_per_generation[g - 1]);
  }
  CHECK(stats.best_fitness_per_generation.back() >= stats.best_fitness_per_generation.front());
  REQUIRE(stats.best_individual.size() == 50);
  for (int g : stats.best_individual) {
    CHECK(g >= 0);
    CHECK(g < 4);
  }
  CHECK(stats.best_evaluation.total_reward == stats.best_fitness_per_generation.back());
}

TEST_CASE("run_ga is deterministic per seed") {
  const scenario::Scenario sc = short_scenario(40);
  GaConfig cfg;
  cfg.population_size = 16;
  cfg.generations = 15;
  cfg.rng_seed = 77;
  const GaRunStats a = run_ga(cfg, sc);
  const GaRunStats b = run_ga(cfg, sc);
  CHECK(a.best_individual == b.best_individual);
  CHECK(a.best_fitness_per_generation == b.best_fitness_per_generation);

  cfg.rng_seed = 78;
  const GaRunStats c = run_ga(cfg, sc);
  CHECK(c.best_individual != a.best_individual);
}

TEST_CASE("ga config validation") {
  GaConfig cfg;
  cfg.population_size = 1;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = GaConfig{};
  cfg.tournament_k = 101;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = GaConfig{};
  cfg.crossover_probability = 1.5;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = GaConfig{};
  cfg.elitism = 100;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
