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


#ifndef SPECGAME_CLI_PRESETS_H_
#define SPECGAME_CLI_PRESETS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "specgame/channel_model.h"

namespace specgame::cli {

// Rate set shared by the preset channels, in packets per slot.
inline constexpr std::array<double, 5> kPresetRates = {0.0, 1.0, 2.0, 3.0, 6.0};

// Average SNR of preset channels 1..5.
inline constexpr std::array<double, 5> kPresetSnrDb = {5.0, 6.0, 7.0, 8.0, 9.0};

// Interior state boundaries used to generate the 6-9 dB vectors.
inline constexpr std::array<double, 4> kPresetThresholdsDb = {1.15, 4.29, 7.40, 14.30};

// State probabilities of the five preset channels. The 5 dB vector is
// tabulated (last entry read as 0.0002 so the row sums to 1); the 6-9 dB
// vectors were generated once with rayleigh_state_probs_db and
// kPresetThresholdsDb, then frozen.
const std::array<std::array<double, 5>, 5>& preset_state_probs();

std::vector<ChannelSpec> preset_channels();

std::vector<std::string> preset_names();

// Partial config document for a preset; nullopt for unknown names.
std::optional<nlohmann::json> preset_document(std::string_view name);

}  // namespace specgame::cli

#endif  // SPECGAME_CLI_PRESETS_H_
