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

#ifndef SEIROPT_GA_HPP_
#define SEIROPT_GA_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "seiropt/rng.hpp"
#include "seiropt/scenario.hpp"

namespace seiropt::ga {

struct GaConfig {
  int population_size = 100;
  int generations = 1000;
  double crossover_probability = 0.6;  // per pair; gated pairs swap genes at 0.5
  double mutation_probability = 0.6;   // per individual
  double gene_mutation_rate = 0.10;    // per gene once an individual mutates
  int tournament_k = 3;
  int elitism = 1;
  std::uint64_t rng_seed = 0;
};

void validate(const GaConfig& cfg);

using Population = std::vector<scenario::ActionSequence>;

struct GaRunStats {
  // Entry 0 scores the random initial population; one entry per generation
  // after that. Non-decreasing whenever elitism >= 1.
  std::vector<double> best_fitness_per_generation;
  scenario::ActionSequence best_individual;
  scenario::EvaluationResult best_evaluation;
  double wall_time_sec = 0.0;
};

// population_size sequences of horizon genes drawn uniformly from the phase
// alphabet, individual by individual, gene by gene.
Population init_population(const GaConfig& cfg, const scenario::Scenario& sc, Rng& rng);

// Draws k distinct indices uniformly and returns the fittest; ties go to the
// lowest population index.
const scenario::ActionSequence& tournament_select(const Population& population,
                                                  std::span<const double> fitnesses, int k,
                                                  Rng& rng);

// With `probability`, swaps each gene position between the children with
// per-gene probability 0.5; otherwise the children copy the parents.
std::pair<scenario::ActionSequence, scenario::ActionSequence> uniform_crossover(
    const scenario::ActionSequence& parent_a, const scenario::ActionSequence& parent_b,
    double probability, Rng& rng);

// With mutation_probability, resamples each gene uniformly over the full
// alphabet with gene_rate (so a resample keeps the old symbol 1/4 of the
// time); otherwise returns the individual unchanged.
scenario::ActionSequence mutate(const scenario::ActionSequence& individual,
                                double mutation_probability, double gene_rate, Rng& rng);

// Generational loop with elitism: score, carry the elite unchanged, refill
// via tournament -> crossover -> mutation.
GaRunStats run_ga(const GaConfig& cfg, const scenario::Scenario& sc);

}  // namespace seiropt::ga

#endif  // SEIROPT_GA_HPP_
