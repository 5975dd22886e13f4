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

#ifndef SEIROPT_EXPERIMENT_HPP_
#define SEIROPT_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seiropt/dqn.hpp"
#include "seiropt/ga.hpp"
#include "seiropt/rng.hpp"
#include "seiropt/scenario.hpp"

namespace seiropt::harness {

enum class Method { kDqn, kGa, kRandom };

Method method_from_string(std::string_view name);
const char* method_name(Method method);

// Canonical optimizer budgets: experiments 1 and 2 run 1000
// generations/episodes, experiment 3 runs 2000.
scenario::Scenario scenario_for_experiment(int id);
ga::GaConfig ga_config_for_experiment(int id);
dqn::DqnConfig dqn_config_for_experiment(int id);

struct ExperimentSpec {
  int id = 1;
  Method method = Method::kRandom;
  int executions = 100;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir;
  int random_samples = 1000;  // budget of the random-search baseline
  // Optional overrides of the canonical per-experiment optimizer settings
  // (the per-run seed is injected either way).
  std::optional<ga::GaConfig> ga_config;
  std::optional<dqn::DqnConfig> dqn_config;
};

struct SummaryStats {
  double avg = 0.0;
  double max = 0.0;
  double min = 0.0;
  double std_dev = 0.0;  // population standard deviation
  double mean_wall_time_sec = 0.0;
  int runs = 0;  // completed runs the stats cover
};

struct RunOutcome {
  int index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double best_reward = 0.0;
  double wall_time_sec = 0.0;
  scenario::ActionSequence best_actions;
  scenario::EvaluationResult best_evaluation;
  // GA: best fitness per generation; DQN: greedy reward per evaluation
  // episode; empty for the random baseline.
  std::vector<std::pair<int, double>> learning_curve;
  std::filesystem::path trajectory_csv;
  std::filesystem::path curve_csv;
};

struct ExperimentResult {
  ExperimentSpec spec;
  SummaryStats stats;
  std::vector<RunOutcome> runs;
  std::filesystem::path summary_csv;
  std::filesystem::path manifest_path;
};

struct RandomSearchResult {
  scenario::ActionSequence actions;
  scenario::EvaluationResult evaluation;
};

// Best of `samples` uniformly random sequences; ties keep the first found.
RandomSearchResult random_search(const scenario::Scenario& sc, int samples, Rng& rng);

SummaryStats summarize(const std::vector<RunOutcome>& runs);

// `executions` independent runs seeded base_seed+j, per-run trajectory CSVs,
// a summary CSV and a JSON manifest under output_dir. Deterministic rewards
// given the base seed; a failed run is recorded and skipped by the stats.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// day,action,s,e,i,r,icu_demand,beds,reward,dfa_state -- one row per day,
// values exact enough to reproduce the doubles on read-back.
void write_trajectory_csv(const scenario::Scenario& sc, const scenario::ActionSequence& actions,
                          const scenario::EvaluationResult& result,
                          const std::filesystem::path& path);

// method,avg,max,min,std,mean_time_sec,runs
void write_summary_csv(Method method, const SummaryStats& stats,
                       const std::filesystem::path& path);

// <prefix>_icu.svg (ICU demand vs bed capacity) and <prefix>_actions.svg
// (phase timeline). Rejects empty results.
void render_plots(const scenario::Scenario& sc, const scenario::ActionSequence& actions,
                  const scenario::EvaluationResult& result, const std::filesystem::path& prefix);

// Per-method comparison chart from summary stats.
void render_summary_plot(const std::vector<std::pair<std::string, SummaryStats>>& stats,
                         const std::filesystem::path& path);

// 60-day open-loop sanity run (alpha 0.2, beta 2, gamma 0.2, 50M population,
// 10k infectious seed); writes a CSV and an SVG of the compartments.
struct DemoResult {
  std::vector<seir::CompartmentState> trajectory;
  std::filesystem::path csv_path;
  std::filesystem::path svg_path;
};

DemoResult demo_fig2(const std::filesystem::path& out_dir);

inline constexpr const char* kVersion = "seiropt 1.0.0";

}  // namespace seiropt::harness

#endif  // SEIROPT_EXPERIMENT_HPP_
