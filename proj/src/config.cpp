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

#include "seiropt/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace seiropt::harness {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Raw values staged during the parse; the scenario is materialized once the
// whole document is read so key order cannot matter.
struct Staged {
  double alpha, beta, gamma;
  double population, e0;
  double phase_delta[scenario::kPhaseCount];
  double phase_reward[scenario::kPhaseCount];
  double beds_start, beds_end;
  double theta_start, theta_end;
  double penalty_bed, penalty_pattern;
  bool pattern_enabled;
  int horizon;
};

Staged staged_defaults() {
  const scenario::Scenario sc = scenario::Scenario::experiment(1);
  Staged st;
  st.alpha = sc.params.alpha;
  st.beta = sc.params.beta;
  st.gamma = sc.params.gamma;
  st.population = sc.population;
  st.e0 = sc.initial.e * sc.population;
  for (int k = 0; k < scenario::kPhaseCount; ++k) {
    st.phase_delta[k] = sc.phases[k].delta;
    st.phase_reward[k] = sc.phases[k].daily_reward;
  }
  st.beds_start = sc.beds_per_thousand.start_value;
  st.beds_end = sc.beds_per_thousand.end_value;
  st.theta_start = sc.theta.start_value;
  st.theta_end = sc.theta.end_value;
  st.penalty_bed = sc.bed_penalty;
  st.penalty_pattern = sc.pattern_penalty;
  st.pattern_enabled = sc.pattern_enabled;
  st.horizon = sc.horizon;
  return st;
}

class Parser {
 public:
  Parser() : staged_(staged_defaults()), config_(default_config()) {}

  void line(int number, std::string_view raw) {
    line_number_ = number;
    std::string_view text = raw;
    if (const std::size_t hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) return;
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
      fail("expected 'key = value'");
    }
    apply(std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1))));
  }

  AppConfig finish() {
    scenario::Scenario sc;
    sc.horizon = staged_.horizon;
    sc.population = staged_.population;
    sc.params = {staged_.alpha, staged_.beta, staged_.gamma};
    if (!(staged_.population > 0.0)) throw ConfigError("population.n must be positive");
    if (staged_.e0 < 0.0 || staged_.e0 > staged_.population) {
      throw ConfigError("population.e0 must lie in [0, population.n]");
    }
    const double e0 = staged_.e0 / staged_.population;
    sc.initial = {1.0 - e0, e0, 0.0, 0.0};
    for (int k = 0; k < scenario::kPhaseCount; ++k) {
      sc.phases[k] = {k, staged_.phase_delta[k], staged_.phase_reward[k]};
    }
    sc.beds_per_thousand = {staged_.beds_start, staged_.beds_end, staged_.horizon};
    sc.theta = {staged_.theta_start, staged_.theta_end, staged_.horizon};
    sc.bed_penalty = staged_.penalty_bed;
    sc.pattern_penalty = staged_.penalty_pattern;
    sc.pattern_enabled = staged_.pattern_enabled;
    try {
      scenario::validate(sc);
      ga::validate(config_.ga);
      dqn::validate(config_.dqn);
    } catch (const std::exception& err) {
      throw ConfigError(err.what());
    }
    config_.scenario = sc;
    return config_;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError("line " + std::to_string(line_number_) + ": " + message);
  }

  double number(const std::string& key, const std::string& value) const {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
      fail("invalid value for key '" + key + "': '" + value + "'");
    }
    return v;
  }

  int integer(const std::string& key, const std::string& value) const {
    const double v = number(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) fail("key '" + key + "' needs an integer");
    return i;
  }

  bool boolean(const std::string& key, const std::string& value) const {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    fail("key '" + key + "' needs a boolean");
  }

  // phases[k].delta / phases[k].reward
  bool phase_key(const std::string& key, const std::string& value) {
    if (key.rfind("phases[", 0) != 0) return false;
    if (key.size() < 10 || key[8] != ']' || key[9] != '.') fail("malformed phase key '" + key + "'");
    const char digit = key[7];
    if (digit < '0' || digit > '3') fail("phase index must lie in 0..3 in '" + key + "'");
    const int k = digit - '0';
    const std::string field = key.substr(10);
    if (field == "delta") {
      staged_.phase_delta[k] = number(key, value);
    } else if (field == "reward") {
      staged_.phase_reward[k] = number(key, value);
    } else {
      fail("unknown key '" + key + "'");
    }
    return true;
  }

  void apply(const std::string& key, const std::string& value) {
    if (phase_key(key, value)) return;
    if (key == "epidemic.alpha") staged_.alpha = number(key, value);
    else if (key == "epidemic.beta") staged_.beta = number(key, value);
    else if (key == "epidemic.gamma") staged_.gamma = number(key, value);
    else if (key == "population.n") staged_.population = number(key, value);
    else if (key == "population.e0") staged_.e0 = number(key, value);
    else if (key == "beds.start") staged_.beds_start = number(key, value);
    else if (key == "beds.end") staged_.beds_end = number(key, value);
    else if (key == "theta.start") staged_.theta_start = number(key, value);
    else if (key == "theta.end") staged_.theta_end = number(key, value);
    else if (key == "penalty.bed") staged_.penalty_bed = number(key, value);
    else if (key == "penalty.pattern") staged_.penalty_pattern = number(key, value);
    else if (key == "pattern.enabled") staged_.pattern_enabled = boolean(key, value);
    else if (key == "horizon") staged_.horizon = integer(key, value);
    else if (key == "ga.population_size") config_.ga.population_size = integer(key, value);
    else if (key == "ga.generations") config_.ga.generations = integer(key, value);
    else if (key == "ga.crossover_probability") config_.ga.crossover_probability = number(key, value);
    else if (key == "ga.mutation_probability") config_.ga.mutation_probability = number(key, value);
    else if (key == "ga.gene_mutation_rate") config_.ga.gene_mutation_rate = number(key, value);
    else if (key == "ga.tournament_k") config_.ga.tournament_k = integer(key, value);
    else if (key == "ga.elitism") config_.ga.elitism = integer(key, value);
    else if (key == "dqn.episodes") config_.dqn.episodes = integer(key, value);
    else if (key == "dqn.window") config_.dqn.window = integer(key, value);
    else if (key == "dqn.discount") config_.dqn.discount = number(key, value);
    else if (key == "dqn.epsilon_start") config_.dqn.epsilon_start = number(key, value);
    else if (key == "dqn.epsilon_decay") config_.dqn.epsilon_decay = number(key, value);
    else if (key == "dqn.epsilon_min") config_.dqn.epsilon_min = number(key, value);
    else if (key == "dqn.replay_capacity") config_.dqn.replay_capacity = integer(key, value);
    else if (key == "dqn.minibatch_size") config_.dqn.minibatch_size = integer(key, value);
    else if (key == "dqn.eval_every") config_.dqn.eval_every = integer(key, value);
    else if (key == "dqn.state_augmentation") config_.dqn.state_augmentation = boolean(key, value);
    else fail("unknown key '" + key + "'");
  }

  Staged staged_;
  AppConfig config_;
  int line_number_ = 0;
};

}  // namespace

AppConfig default_config() {
  AppConfig cfg;
  cfg.scenario = scenario::Scenario::experiment(1);
  return cfg;
}

AppConfig parse_config_text(std::string_view text) {
  Parser parser;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    parser.line(++line_number, text.substr(pos, end - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return parser.finish();
}

AppConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace seiropt::harness
