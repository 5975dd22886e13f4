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
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace seiropt::ga {
namespace {

// Indices of the `count` fittest individuals, ties by lower index.
std::vector<std::size_t> fittest_indices(std::span<const double> fitnesses, int count) {
  std::vector<std::size_t> order(fitnesses.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (fitnesses[a] != fitnesses[b]) return fitnesses[a] > fitnesses[b];
                      return a < b;
                    });
  order.resize(count);
  return order;
}

}  // namespace

void validate(const GaConfig& cfg) {
  if (cfg.population_size < 2) throw std::invalid_argument("population_size must be >= 2");
  if (cfg.generations < 0) throw std::invalid_argument("generations must be >= 0");
  for (double p : {cfg.crossover_probability, cfg.mutation_probability, cfg.gene_mutation_rate}) {
    if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (cfg.tournament_k < 1 || cfg.tournament_k > cfg.population_size) {
    throw std::invalid_argument("tournament_k must lie in 1..population_size");
  }
  if (cfg.elitism < 0 || cfg.elitism >= cfg.population_size) {
    throw std::invalid_argument("elitism must lie in 0..population_size-1");
  }
}

Population init_population(const GaConfig& cfg, const scenario::Scenario& sc, Rng& rng) {
  validate(cfg);
  Population pop(cfg.population_size);
  for (scenario::ActionSequence& ind : pop) {
    ind.resize(sc.horizon);
    for (int& gene : ind) gene = rng.below_int(scenario::kPhaseCount);
  }
  return pop;
}

const scenario::ActionSequence& tournament_select(const Population& population,
                                                  std::span<const double> fitnesses, int k,
                                                  Rng& rng) {
  if (population.empty()) throw std::invalid_argument("tournament on an empty population");
  if (fitnesses.size() != population.size()) {
    throw std::invalid_argument("fitnesses not aligned with population");
  }
  if (k < 1 || k > static_cast<int>(population.size())) {
    throw std::invalid_argument("tournament size out of range");
  }

  // k distinct entrants; rejection is cheap for k << population size.
  std::size_t picked[64];
  std::vector<std::size_t> heap_picked;
  std::size_t* entrants = picked;
  if (k > 64) {
    heap_picked.resize(k);
    entrants = heap_picked.data();
  }
  for (int drawn = 0; drawn < k;) {
    const std::size_t idx = rng.below(population.size());
    bool seen = false;
    for (int d = 0; d < drawn; ++d) {
      if (entrants[d] == idx) {
        seen = true;
        break;
      }
    }
    if (!seen) entrants[drawn++] = idx;
  }

  std::size_t best = entrants[0];
  for (int d = 1; d < k; ++d) {
    const std::size_t idx = entrants[d];
    if (fitnesses[idx] > fitnesses[best] || (fitnesses[idx] == fitnesses[best] && idx < best)) {
      best = idx;
    }
  }
  return population[best];
}

std::pair<scenario::ActionSequence, scenario::ActionSequence> uniform_crossover(
    const scenario::ActionSequence& parent_a, const scenario::ActionSequence& parent_b,
    double probability, Rng& rng) {
  if (parent_a.size() != parent_b.size()) {
    throw std::invalid_argument("crossover parents differ in length");
  }
  std::pair<scenario::ActionSequence, scenario::ActionSequence> children{parent_a, parent_b};
  if (!rng.bernoulli(probability)) return children;
  for (std::size_t g = 0; g < parent_a.size(); ++g) {
    if (rng.bernoulli(0.5)) std::swap(children.first[g], children.second[g]);
  }
  return children;
}

scenario::ActionSequence mutate(const scenario::ActionSequence& individual,
                                double mutation_probability, double gene_rate, Rng& rng) {
  scenario::ActionSequence out = individual;
  if (!rng.bernoulli(mutation_probability)) return out;
  for (int& gene : out) {
    if (rng.bernoulli(gene_rate)) gene = rng.below_int(scenario::kPhaseCount);
  }
  return out;
}

GaRunStats run_ga(const GaConfig& cfg, const scenario::Scenario& sc) {
  validate(cfg);
  scenario::validate(sc);
  const auto t0 = std::chrono::steady_clock::now();

  Rng rng(cfg.rng_seed);
  Population pop = init_population(cfg, sc, rng);
  std::vector<double> fitnesses(pop.size());

  GaRunStats stats;
  stats.best_fitness_per_generation.reserve(cfg.generations + 1);
  double best_fitness = 0.0;
  bool have_best = false;

  Population next;
  next.reserve(pop.size());

  for (int gen = 0; gen <= cfg.generations; ++gen) {
    for (std::size_t k = 0; k < pop.size(); ++k) {
      fitnesses[k] = scenario::evaluate_sequence(sc, pop[k]).total_reward;
    }
    const std::size_t gen_best = fittest_indices(fitnesses, 1).front();
    stats.best_fitness_per_generation.push_back(fitnesses[gen_best]);
    if (!have_best || fitnesses[gen_best] > best_fitness) {
      best_fitness = fitnesses[gen_best];
      stats.best_individual = pop[gen_best];
      have_best = true;
    }
    if (gen == cfg.generations) break;

    next.clear();
    for (std::size_t e : fittest_indices(fitnesses, cfg.elitism)) next.push_back(pop[e]);
    while (next.size() < pop.size()) {
      const scenario::ActionSequence& pa = tournament_select(pop, fitnesses, cfg.tournament_k, rng);
      const scenario::ActionSequence& pb = tournament_select(pop, fitnesses, cfg.tournament_k, rng);
      auto [ca, cb] = uniform_crossover(pa, pb, cfg.crossover_probability, rng);
      next.push_back(mutate(ca, cfg.mutation_probability, cfg.gene_mutation_rate, rng));
      if (next.size() < pop.size()) {
        next.push_back(mutate(cb, cfg.mutation_probability, cfg.gene_mutation_rate, rng));
      }
    }
    pop.swap(next);
  }

  stats.best_evaluation = scenario::evaluate_sequence(sc, stats.best_individual);
  stats.wall_time_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return stats;
}

}  // namespace seiropt::ga
