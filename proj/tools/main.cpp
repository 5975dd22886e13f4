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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seiropt/config.hpp"
#include "seiropt/dqn.hpp"
#include "seiropt/experiment.hpp"
#include "seiropt/ga.hpp"
#include "seiropt/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace seiropt;

fs::path default_out_dir() {
  if (const char* env = std::getenv("SEIROPT_OUT"); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  return fs::path("out");
}

// Accepts a file of numbers, an inline comma/space list, or a bare digit
// string ("003312...").
scenario::ActionSequence parse_actions(const std::string& arg) {
  std::string text = arg;
  if (fs::exists(fs::path(arg)) && fs::is_regular_file(fs::path(arg))) {
    std::ifstream in(arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  scenario::ActionSequence actions;
  bool separators = text.find_first_of(", \t\n\r") != std::string::npos;
  if (separators) {
    for (char& c : text) {
      if (c == ',') c = ' ';
    }
    std::istringstream in(text);
    int v = 0;
    while (in >> v) actions.push_back(v);
    if (!in.eof()) throw std::invalid_argument("could not parse action list");
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("could not parse action list");
      actions.push_back(c - '0');
    }
  }
  if (actions.empty()) throw std::invalid_argument("action list is empty");
  return actions;
}

harness::AppConfig load_config(const std::string& config_path) {
  if (config_path.empty()) return harness::default_config();
  return harness::parse_config(config_path);
}

void write_curve_csv(const fs::path& path, const char* x_name, const char* y_name,
                     const std::vector<std::pair<int, double>>& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open CSV for writing: " + path.string());
  out << x_name << ',' << y_name << '\n';
  char buf[40];
  for (const auto& [x, y] : points) {
    std::snprintf(buf, sizeof buf, "%.17g", y);
    out << x << ',' << buf << '\n';
  }
}

int cmd_simulate(const std::string& config_path, const std::string& actions_arg,
                 const fs::path& out_dir) {
  const harness::AppConfig cfg = load_config(config_path);
  const scenario::ActionSequence actions = parse_actions(actions_arg);
  const scenario::EvaluationResult result = scenario::evaluate_sequence(cfg.scenario, actions);

  fs::create_directories(out_dir);
  harness::write_trajectory_csv(cfg.scenario, actions, result, out_dir / "trajectory.csv");
  harness::render_plots(cfg.scenario, actions, result, out_dir / "simulate");

  std::printf("total reward: %.6g billion over %d days\n", result.total_reward,
              cfg.scenario.horizon);
  std::printf("bed violations: %zu day(s)\n", result.violation_days.size());
  if (result.pattern_break_day) {
    std::printf("pattern broken on day %d\n", *result.pattern_break_day);
  }
  std::printf("wrote %s\n", (out_dir / "trajectory.csv").string().c_str());
  return 0;
}

int cmd_optimize(const std::string& method_name, int experiment_id,
                 const std::string& config_path, std::uint64_t seed, const fs::path& out_dir) {
  const harness::Method method = harness::method_from_string(method_name);
  harness::AppConfig cfg;
  if (!config_path.empty()) {
    cfg = harness::parse_config(config_path);
  } else {
    cfg.scenario = harness::scenario_for_experiment(experiment_id);
    cfg.ga = harness::ga_config_for_experiment(experiment_id);
    cfg.dqn = harness::dqn_config_for_experiment(experiment_id);
  }
  fs::create_directories(out_dir);

  scenario::ActionSequence best;
  scenario::EvaluationResult eval;
  switch (method) {
    case harness::Method::kRandom: {
      Rng rng(seed);
      harness::RandomSearchResult r = harness::random_search(cfg.scenario, 1000, rng);
      best = std::move(r.actions);
      eval = std::move(r.evaluation);
      break;
    }
    case harness::Method::kGa: {
      cfg.ga.rng_seed = seed;
      ga::GaRunStats stats = ga::run_ga(cfg.ga, cfg.scenario);
      std::vector<std::pair<int, double>> curve;
      for (std::size_t g = 0; g < stats.best_fitness_per_generation.size(); ++g) {
        curve.emplace_back(static_cast<int>(g), stats.best_fitness_per_generation[g]);
      }
      write_curve_csv(out_dir / "fitness_curve.csv", "generation", "best_fitness", curve);
      best = std::move(stats.best_individual);
      eval = std::move(stats.best_evaluation);
      break;
    }
    case harness::Method::kDqn: {
      cfg.dqn.rng_seed = seed;
      dqn::TrainReport report = dqn::train(cfg.dqn, cfg.scenario);
      std::vector<std::pair<int, double>> curve;
      for (const auto& p : report.greedy_curve) curve.emplace_back(p.episode, p.total_reward);
      write_curve_csv(out_dir / "greedy_curve.csv", "episode", "greedy_reward", curve);
      best = std::move(report.best_actions);
      eval = std::move(report.best_evaluation);
      break;
    }
  }

  harness::write_trajectory_csv(cfg.scenario, best, eval, out_dir / "best_trajectory.csv");
  harness::render_plots(cfg.scenario, best, eval, out_dir / "best");
  std::printf("%s best total reward: %.6g billion\n", harness::method_name(method),
              eval.total_reward);
  std::printf("bed violations: %zu day(s)%s\n", eval.violation_days.size(),
              eval.pattern_break_day ? ", pattern broken" : "");
  return 0;
}

int cmd_experiment(int id, const std::string& method_name, int runs, std::uint64_t seed,
                   const fs::path& out_dir) {
  harness::ExperimentSpec spec;
  spec.id = id;
  spec.method = harness::method_from_string(method_name);
  spec.executions = runs;
  spec.base_seed = seed;
  spec.output_dir = out_dir;
  const harness::ExperimentResult result = harness::run_experiment(spec);

  harness::render_summary_plot({{harness::method_name(spec.method), result.stats}},
                               out_dir / "summary.svg");
  std::printf("%s on experiment %d (%d/%d runs): avg %.2f max %.2f min %.2f std %.2f\n",
              harness::method_name(spec.method), id, result.stats.runs, spec.executions,
              result.stats.avg, result.stats.max, result.stats.min, result.stats.std_dev);
  std::printf("wrote %s\n", result.summary_csv.string().c_str());
  return 0;
}

int cmd_demo_fig2(const fs::path& out_dir) {
  const harness::DemoResult demo = harness::demo_fig2(out_dir);
  const seir::CompartmentState& last = demo.trajectory.back();
  std::printf("s(60) = %.6f  e(60) = %.6f  i(60) = %.6f  r(60) = %.6f\n", last.s, last.e, last.i,
              last.r);
  std::printf("wrote %s and %s\n", demo.csv_path.string().c_str(),
              demo.svg_path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time SEIR epidemic sandbox with DQN/GA/random policy search"};
  app.set_version_flag("--version", harness::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string actions_arg;
  std::string method = "random";
  int experiment_id = 1;
  int runs = 100;
  std::uint64_t seed = 1;
  fs::path out_dir = default_out_dir();

  CLI::App* simulate = app.add_subcommand("simulate", "Evaluate one action sequence");
  simulate->add_option("--config", config_path, "Scenario config file");
  simulate->add_option("--actions", actions_arg, "Action sequence (file, inline list, or digits)")
      ->required();
  simulate->add_option("--out", out_dir, "Output directory");

  CLI::App* optimize = app.add_subcommand("optimize", "Run one optimization");
  optimize->add_option("--method", method, "dqn, ga, or random")->required();
  optimize->add_option("--experiment", experiment_id, "Scenario 1, 2, or 3")
      ->check(CLI::Range(1, 3));
  optimize->add_option("--config", config_path, "Config file overriding the experiment scenario");
  optimize->add_option("--seed", seed, "RNG seed");
  optimize->add_option("--out", out_dir, "Output directory");

  CLI::App* experiment = app.add_subcommand("experiment", "Multi-run statistics for one method");
  experiment->add_option("--id", experiment_id, "Scenario 1, 2, or 3")
      ->required()
      ->check(CLI::Range(1, 3));
  experiment->add_option("--method", method, "dqn, ga, or random")->required();
  experiment->add_option("--runs", runs, "Independent executions")->check(CLI::PositiveNumber);
  experiment->add_option("--seed", seed, "Base seed; run j uses seed+j");
  experiment->add_option("--out", out_dir, "Output directory");

  CLI::App* demo = app.add_subcommand("demo-fig2", "60-day unmitigated-epidemic sanity run");
  demo->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(config_path, actions_arg, out_dir);
    if (optimize->parsed()) return cmd_optimize(method, experiment_id, config_path, seed, out_dir);
    if (experiment->parsed()) return cmd_experiment(experiment_id, method, runs, seed, out_dir);
    if (demo->parsed()) return cmd_demo_fig2(out_dir);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
