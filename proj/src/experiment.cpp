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

#include "seiropt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "seiropt/svg.hpp"

namespace seiropt::harness {
namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

scenario::ActionSequence random_sequence(const scenario::Scenario& sc, Rng& rng) {
  scenario::ActionSequence actions(sc.horizon);
  for (int& a : actions) a = rng.below_int(scenario::kPhaseCount);
  return actions;
}

void run_one(const ExperimentSpec& spec, const scenario::Scenario& sc, RunOutcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  switch (spec.method) {
    case Method::kRandom: {
      Rng rng(out.seed);
      RandomSearchResult best = random_search(sc, spec.random_samples, rng);
      out.best_actions = std::move(best.actions);
      out.best_evaluation = std::move(best.evaluation);
      break;
    }
    case Method::kGa: {
      ga::GaConfig cfg = spec.ga_config.value_or(ga_config_for_experiment(spec.id));
      cfg.rng_seed = out.seed;
      ga::GaRunStats stats = ga::run_ga(cfg, sc);
      out.best_actions = std::move(stats.best_individual);
      out.best_evaluation = std::move(stats.best_evaluation);
      for (std::size_t g = 0; g < stats.best_fitness_per_generation.size(); ++g) {
        out.learning_curve.emplace_back(static_cast<int>(g),
                                        stats.best_fitness_per_generation[g]);
      }
      break;
    }
    case Method::kDqn: {
      dqn::DqnConfig cfg = spec.dqn_config.value_or(dqn_config_for_experiment(spec.id));
      cfg.rng_seed = out.seed;
      dqn::TrainReport report = dqn::train(cfg, sc);
      out.best_actions = std::move(report.best_actions);
      out.best_evaluation = std::move(report.best_evaluation);
      for (const dqn::TrainReport::EvalPoint& p : report.greedy_curve) {
        out.learning_curve.emplace_back(p.episode, p.total_reward);
      }
      break;
    }
  }
  out.best_reward = out.best_evaluation.total_reward;
  out.wall_time_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.ok = true;
}

}  // namespace

Method method_from_string(std::string_view name) {
  if (name == "dqn") return Method::kDqn;
  if (name == "ga") return Method::kGa;
  if (name == "random") return Method::kRandom;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected dqn, ga, or random)");
}

const char* method_name(Method method) {
  switch (method) {
    case Method::kDqn: return "dqn";
    case Method::kGa: return "ga";
    case Method::kRandom: return "random";
  }
  return "?";
}

scenario::Scenario scenario_for_experiment(int id) { return scenario::Scenario::experiment(id); }

ga::GaConfig ga_config_for_experiment(int id) {
  ga::GaConfig cfg;
  cfg.generations = id == 3 ? 2000 : 1000;
  return cfg;
}

dqn::DqnConfig dqn_config_for_experiment(int id) {
  dqn::DqnConfig cfg;
  cfg.episodes = id == 3 ? 2000 : 1000;
  return cfg;
}

RandomSearchResult random_search(const scenario::Scenario& sc, int samples, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("random search needs at least one sample");
  RandomSearchResult best;
  for (int s = 0; s < samples; ++s) {
    scenario::ActionSequence actions = random_sequence(sc, rng);
    scenario::EvaluationResult eval = scenario::evaluate_sequence(sc, actions);
    if (s == 0 || eval.total_reward > best.evaluation.total_reward) {
      best.actions = std::move(actions);
      best.evaluation = std::move(eval);
    }
  }
  return best;
}

SummaryStats summarize(const std::vector<RunOutcome>& runs) {
  SummaryStats stats;
  for (const RunOutcome& run : runs) {
    if (!run.ok) continue;
    if (stats.runs == 0) {
      stats.max = stats.min = run.best_reward;
    } else {
      stats.max = std::max(stats.max, run.best_reward);
      stats.min = std::min(stats.min, run.best_reward);
    }
    stats.avg += run.best_reward;
    stats.mean_wall_time_sec += run.wall_time_sec;
    ++stats.runs;
  }
  if (stats.runs == 0) return stats;
  stats.avg /= stats.runs;
  stats.mean_wall_time_sec /= stats.runs;
  double var = 0.0;
  for (const RunOutcome& run : runs) {
    if (!run.ok) continue;
    const double d = run.best_reward - stats.avg;
    var += d * d;
  }
  stats.std_dev = std::sqrt(var / stats.runs);
  return stats;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.id < 1 || spec.id > 3) throw std::invalid_argument("experiment id must be 1, 2, or 3");
  if (spec.executions < 1) throw std::invalid_argument("executions must be >= 1");
  if (spec.output_dir.empty()) throw std::invalid_argument("output directory required");
  std::filesystem::create_directories(spec.output_dir);

  const scenario::Scenario sc = scenario_for_experiment(spec.id);
  const std::string started = timestamp_utc();

  ExperimentResult result;
  result.spec = spec;
  result.runs.resize(spec.executions);
  for (int j = 0; j < spec.executions; ++j) {
    RunOutcome& out = result.runs[j];
    out.index = j;
    out.seed = spec.base_seed + static_cast<std::uint64_t>(j);
    try {
      run_one(spec, sc, out);
      char name[64];
      std::snprintf(name, sizeof name, "run_%03d_trajectory.csv", j);
      out.trajectory_csv = spec.output_dir / name;
      write_trajectory_csv(sc, out.best_actions, out.best_evaluation, out.trajectory_csv);
      if (!out.learning_curve.empty()) {
        std::snprintf(name, sizeof name, "run_%03d_curve.csv", j);
        out.curve_csv = spec.output_dir / name;
        std::ofstream curve(out.curve_csv);
        if (!curve) {
          throw std::runtime_error("cannot open CSV for writing: " + out.curve_csv.string());
        }
        curve << (spec.method == Method::kGa ? "generation,best_fitness\n"
                                             : "episode,greedy_reward\n");
        char cell[40];
        for (const auto& [x, y] : out.learning_curve) {
          std::snprintf(cell, sizeof cell, "%.17g", y);
          curve << x << ',' << cell << "\n";
        }
      }
    } catch (const std::exception& err) {
      out.ok = false;
      out.error = err.what();
    }
  }
  result.stats = summarize(result.runs);

  result.summary_csv = spec.output_dir / "summary.csv";
  write_summary_csv(spec.method, result.stats, result.summary_csv);

  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["experiment"] = spec.id;
  manifest["method"] = method_name(spec.method);
  manifest["executions"] = spec.executions;
  manifest["base_seed"] = spec.base_seed;
  manifest["random_samples"] = spec.random_samples;
  manifest["started"] = started;
  manifest["finished"] = timestamp_utc();
  manifest["completed_runs"] = result.stats.runs;
  manifest["summary_csv"] = result.summary_csv.filename().string();
  manifest["scenario"] = {
      {"horizon", sc.horizon},
      {"population", sc.population},
      {"alpha", sc.params.alpha},
      {"beta", sc.params.beta},
      {"gamma", sc.params.gamma},
      {"beds_start", sc.beds_per_thousand.start_value},
      {"beds_end", sc.beds_per_thousand.end_value},
      {"theta_start", sc.theta.start_value},
      {"theta_end", sc.theta.end_value},
      {"pattern_enabled", sc.pattern_enabled},
  };
  manifest["runs"] = nlohmann::json::array();
  for (const RunOutcome& run : result.runs) {
    nlohmann::json entry;
    entry["index"] = run.index;
    entry["seed"] = run.seed;
    entry["ok"] = run.ok;
    if (run.ok) {
      entry["best_reward"] = run.best_reward;
      entry["wall_time_sec"] = run.wall_time_sec;
      entry["trajectory_csv"] = run.trajectory_csv.filename().string();
      if (!run.curve_csv.empty()) entry["curve_csv"] = run.curve_csv.filename().string();
      entry["violation_days"] = run.best_evaluation.violation_days.size();
      if (run.best_evaluation.pattern_break_day) {
        entry["pattern_break_day"] = *run.best_evaluation.pattern_break_day;
      }
    } else {
      entry["error"] = run.error;
    }
    manifest["runs"].push_back(std::move(entry));
  }
  result.manifest_path = spec.output_dir / "manifest.json";
  std::ofstream mf(result.manifest_path);
  if (!mf) throw std::runtime_error("cannot write manifest: " + result.manifest_path.string());
  mf << manifest.dump(2) << "\n";

  return result;
}

void write_trajectory_csv(const scenario::Scenario& sc, const scenario::ActionSequence& actions,
                          const scenario::EvaluationResult& result,
                          const std::filesystem::path& path) {
  if (result.daily_rewards.empty()) throw std::invalid_argument("cannot write an empty result");
  if (actions.size() != result.daily_rewards.size() ||
      result.trajectory.size() != actions.size() + 1) {
    throw std::invalid_argument("trajectory result is inconsistent with the action sequence");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open CSV for writing: " + path.string());
  out << "day,action,s,e,i,r,icu_demand,beds,reward,dfa_state\n";
  scenario::DfaState dfa = scenario::DfaState::kP0;
  for (std::size_t d = 0; d < actions.size(); ++d) {
    const int day = static_cast<int>(d) + 1;
    const seir::CompartmentState& st = result.trajectory[d + 1];
    if (sc.pattern_enabled) dfa = scenario::dfa_step(dfa, actions[d]);
    out << day << ',' << actions[d] << ',' << g17(st.s) << ',' << g17(st.e) << ',' << g17(st.i)
        << ',' << g17(st.r) << ',' << g17(sc.icu_fraction * st.i) << ','
        << g17(scenario::beds_fraction(sc, day)) << ',' << g17(result.daily_rewards[d]) << ','
        << (sc.pattern_enabled ? scenario::dfa_name(dfa) : "-") << "\n";
  }
  if (!out) throw std::runtime_error("failed writing CSV: " + path.string());
}

void write_summary_csv(Method method, const SummaryStats& stats,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open CSV for writing: " + path.string());
  char time_buf[32];
  std::snprintf(time_buf, sizeof time_buf, "%.3f", stats.mean_wall_time_sec);
  out << "method,avg,max,min,std,mean_time_sec,runs\n";
  out << method_name(method) << ',' << g17(stats.avg) << ',' << g17(stats.max) << ','
      << g17(stats.min) << ',' << g17(stats.std_dev) << ',' << time_buf << ',' << stats.runs
      << "\n";
  if (!out) throw std::runtime_error("failed writing CSV: " + path.string());
}

void render_plots(const scenario::Scenario& sc, const scenario::ActionSequence& actions,
                  const scenario::EvaluationResult& result, const std::filesystem::path& prefix) {
  if (result.daily_rewards.empty() || actions.empty()) {
    throw std::invalid_argument("cannot plot an empty result");
  }
  if (result.trajectory.size() != actions.size() + 1) {
    throw std::invalid_argument("trajectory result is inconsistent with the action sequence");
  }
  const int n = static_cast<int>(actions.size());

  svg::Series demand{"ICU demand", "#cc3311", {}, ""};
  svg::Series capacity{"bed capacity", "#0077bb", {}, "6,4"};
  demand.values.reserve(n);
  capacity.values.reserve(n);
  for (int day = 1; day <= n; ++day) {
    demand.values.push_back(sc.icu_fraction * result.trajectory[day].i * 100.0);
    capacity.values.push_back(scenario::beds_fraction(sc, day) * 100.0);
  }
  std::filesystem::path icu_path = prefix;
  icu_path += "_icu.svg";
  svg::write_line_chart(icu_path, "ICU demand vs bed capacity", "day", "% of population",
                        {demand, capacity});

  svg::Series timeline{"phase", "#228833", {}, ""};
  timeline.values.assign(actions.begin(), actions.end());
  std::filesystem::path actions_path = prefix;
  actions_path += "_actions.svg";
  svg::write_line_chart(actions_path, "Action timeline", "day", "phase", {timeline},
                        /*step=*/true);
}

void render_summary_plot(const std::vector<std::pair<std::string, SummaryStats>>& stats,
                         const std::filesystem::path& path) {
  if (stats.empty()) throw std::invalid_argument("summary plot needs at least one method");
  std::vector<svg::BarEntry> entries;
  entries.reserve(stats.size());
  for (const auto& [name, s] : stats) {
    entries.push_back({name, s.avg, s.min, s.max});
  }
  svg::write_bar_chart(path, "Best total reward by method", "billions", entries);
}

DemoResult demo_fig2(const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const double population = 50'000'000.0;
  const double i0 = 10'000.0 / population;
  const seir::EpidemicParams params{0.2, 2.0, 0.2};
  const seir::CompartmentState initial{1.0 - i0, 0.0, i0, 0.0};
  const std::vector<double> scales(60, 1.0);

  DemoResult demo;
  demo.trajectory = seir::simulate_trajectory(initial, params, scales);

  demo.csv_path = out_dir / "demo_fig2.csv";
  std::ofstream out(demo.csv_path);
  if (!out) throw std::runtime_error("cannot open CSV for writing: " + demo.csv_path.string());
  out << "day,s,e,i,r\n";
  for (std::size_t d = 0; d < demo.trajectory.size(); ++d) {
    const seir::CompartmentState& st = demo.trajectory[d];
    out << d << ',' << g17(st.s) << ',' << g17(st.e) << ',' << g17(st.i) << ',' << g17(st.r)
        << "\n";
  }
  out.close();

  svg::Series s{"susceptible", "#0077bb", {}, ""};
  svg::Series e{"exposed", "#ee7733", {}, ""};
  svg::Series i{"infectious", "#cc3311", {}, ""};
  svg::Series r{"recovered", "#228833", {}, ""};
  for (const seir::CompartmentState& st : demo.trajectory) {
    s.values.push_back(st.s);
    e.values.push_back(st.e);
    i.values.push_back(st.i);
    r.values.push_back(st.r);
  }
  demo.svg_path = out_dir / "demo_fig2.svg";
  svg::write_line_chart(demo.svg_path, "Unmitigated epidemic, 60 days", "day",
                        "fraction of population", {s, e, i, r});
  return demo;
}

}  // namespace seiropt::harness
