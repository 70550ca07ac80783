// Copyright 2026 The specgame Authors
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


#ifndef SPECGAME_CLI_CONFIG_H_
#define SPECGAME_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "specgame/game.h"
#include "specgame/simulator.h"

namespace specgame::cli {

struct SweepSettings {
  SweepVariable variable = SweepVariable::kUsers;
  std::vector<double> values;
  std::vector<Algorithm> algorithms{Algorithm::kProposed};

  friend bool operator==(const SweepSettings&, const SweepSettings&) = default;
};

struct OdeSettings {
  double dt = 0.02;
  long long steps = 5000;
  int starts = 20;
  // Every `stride`-th step is written to ode.csv (the last step always is).
  long long stride = 50;

  friend bool operator==(const OdeSettings&, const OdeSettings&) = default;
};

struct AnalyzeSettings {
  std::uint64_t limit = kDefaultEnumerationLimit;
  // Random deviation checks; 0 scans every unilateral deviation.
  long long checks = 0;
  // Per-profile utilities are listed only up to this many profiles.
  std::uint64_t list_profiles = 4096;

  friend bool operator==(const AnalyzeSettings&, const AnalyzeSettings&) = default;
};

struct ExperimentConfig {
  explicit ExperimentConfig(SimConfig sim_config) : sim(std::move(sim_config)) {}

  SimConfig sim;
  std::string preset;  // empty when none was used
  std::filesystem::path out_dir = "out";
  bool plot = false;
  std::optional<SweepSettings> sweep;
  OdeSettings ode;
  AnalyzeSettings analyze;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// All parse errors are InvalidInput carrying the offending key path.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig config_from_json(const nlohmann::json& doc);

// Fully resolved form; config_from_json(config_to_json(c)) == c.
nlohmann::json config_to_json(const ExperimentConfig& config);

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(Contention contention);
std::string_view to_string(SweepVariable variable);

}  // namespace specgame::cli

#endif  // SPECGAME_CLI_CONFIG_H_
