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

#ifndef SEIROPT_CONFIG_HPP_
#define SEIROPT_CONFIG_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "seiropt/dqn.hpp"
#include "seiropt/ga.hpp"
#include "seiropt/scenario.hpp"

namespace seiropt::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AppConfig {
  scenario::Scenario scenario;
  ga::GaConfig ga;
  dqn::DqnConfig dqn;
};

// The baseline every config file starts from: the constant-capacity scenario
// with the default optimizer settings.
AppConfig default_config();

// Flat key = value document; '#' starts a comment. Missing keys keep the
// defaults, unknown keys are errors (with a line number). See README.md for
// the key list.
AppConfig parse_config_text(std::string_view text);
AppConfig parse_config(const std::filesystem::path& path);

}  // namespace seiropt::harness

#endif  // SEIROPT_CONFIG_HPP_
