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


#include "specgame/cli/presets.h"

namespace specgame::cli {
namespace {

using nlohmann::json;

json preset_channel_array() {
  json channels = json::array();
  const auto& probs = preset_state_probs();
  for (int m = 0; m < 5; ++m) {
    channels.push_back({{"id", m + 1},
                        {"rates", kPresetRates},
                        {"probs", probs[m]},
                        {"source", m == 0 ? "tabulated" : "rayleigh_fit"}});
  }
  return channels;
}

json preset_base(int users, double theta) {
  return {{"game",
           {{"users", {{"count", users}, {"theta", theta}}},
            {"channels", preset_channel_array()},
            {"contention", "slot_winner"}}},
          {"algorithm", "proposed"},
          {"eta", 0.1},
          {"lambda", "1/t"},
          {"iterations", 2000},
          {"trials", 200},
          {"window", 10}};
}

json user_counts() {
  json values = json::array();
  for (int n = 5; n <= 25; n += 2) values.push_back(n);
  return values;
}

}  // namespace

const std::array<std::array<double, 5>, 5>& preset_state_probs() {
  static const std::array<std::array<double, 5>, 5> kProbs = {{
      {0.3376, 0.2348, 0.2517, 0.1757, 0.0002},
      {0.279161884667, 0.211441330279, 0.257914886155, 0.250323631201, 0.001158267698},
      {0.228960717241, 0.185836384652, 0.251157440999, 0.329392805406, 0.004652651701},
      {0.186604660827, 0.160016661435, 0.234830631558, 0.404507348481, 0.014040697698},
      {0.151308033174, 0.135542918306, 0.212490510408, 0.466897287354, 0.033761250759},
  }};
  return kProbs;
}

std::vector<ChannelSpec> preset_channels() {
  std::vector<ChannelSpec> channels;
  const auto& probs = preset_state_probs();
  for (int m = 0; m < 5; ++m) {
    channels.emplace_back(m + 1, std::vector<double>(kPresetRates.begin(), kPresetRates.end()),
                          std::vector<double>(probs[m].begin(), probs[m].end()));
  }
  return channels;
}

std::vector<std::string> preset_names() {
  return {"fig2", "eta_sweep", "qos_sweep", "users_loose", "users_strict", "sla_compare",
          "identical2"};
}

std::optional<nlohmann::json> preset_document(std::string_view name) {
  if (name == "fig2") return preset_base(8, 1e-2);
  if (name == "eta_sweep") {
    json doc = preset_base(8, 1e-2);
    doc["sweep"] = {{"variable", "eta"},
                    {"values", {0.02, 0.05, 0.1, 0.2, 0.3}},
                    {"algorithms", {"proposed"}}};
    return doc;
  }
  if (name == "qos_sweep") {
    json doc = preset_base(7, 1e-2);
    doc["sweep"] = {{"variable", "theta"},
                    {"values", {1e-4, 1e-3, 1e-2, 1e-1, 1.0}},
                    {"algorithms", {"proposed", "random"}}};
    return doc;
  }
  if (name == "users_loose" || name == "users_strict") {
    json doc = preset_base(5, name == "users_loose" ? 1e-2 : 1e-1);
    doc["sweep"] = {
        {"variable", "N"}, {"values", user_counts()}, {"algorithms", {"proposed", "random"}}};
    return doc;
  }
  if (name == "sla_compare") {
    json doc = preset_base(5, 1e-2);
    doc["sweep"] = {{"variable", "N"},
                    {"values", {5, 10, 15, 20, 25}},
                    {"algorithms", {"proposed", "sla", "random"}}};
    return doc;
  }
  if (name == "identical2") {
    json channel = {{"rates", {0.0, 2.0}}, {"probs", {0.5, 0.5}}};
    json first = channel;
    first["id"] = 1;
    json second = channel;
    second["id"] = 2;
    return json{{"game",
                 {{"users", {0.1, 0.1}},
                  {"channels", {first, second}},
                  {"contention", "fair_share"}}},
                {"iterations", 500},
                {"trials", 20}};
  }
  return std::nullopt;
}

}  // namespace specgame::cli
