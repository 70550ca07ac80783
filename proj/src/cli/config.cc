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


#include "specgame/cli/config.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "specgame/channel_model.h"
#include "specgame/cli/presets.h"
#include "specgame/errors.h"

namespace specgame::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InvalidInput("config: " + (path.empty() ? std::string("<root>") : path) + ": " + message);
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void check_object(const json& value, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
  if (!value.is_object()) fail(path, "expected an object");
  for (const auto& item : value.items()) {
    bool known = false;
    for (std::string_view key : allowed) known = known || item.key() == key;
    if (!known) fail(join(path, item.key()), "unknown key");
  }
}

double number(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

long long integer(const json& value, const std::string& path, long long min) {
  if (!value.is_number_integer()) fail(path, "expected an integer");
  if (value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(
                                                                     std::numeric_limits<long long>::max())) {
    fail(path, "integer out of range");
  }
  const long long x = value.get<long long>();
  if (x < min) fail(path, "must be >= " + std::to_string(min));
  return x;
}

std::uint64_t unsigned_integer(const json& value, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) fail(path, "must be non-negative");
  fail(path, "expected a non-negative integer");
}

bool boolean(const json& value, const std::string& path) {
  if (!value.is_boolean()) fail(path, "expected true or false");
  return value.get<bool>();
}

std::string string(const json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected a string");
  return value.get<std::string>();
}

std::vector<double> numbers(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(number(value[i], at_index(path, i)));
  return out;
}

QosIndex qos(double theta, const std::string& path) {
  if (!(theta > 0.0)) fail(path, "QoS index must be positive");
  return QosIndex(theta);
}

std::vector<QosIndex> parse_users(const json& value, const std::string& path) {
  std::vector<QosIndex> users;
  if (value.is_array()) {
    if (value.empty()) fail(path, "at least one user is required");
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string item = at_index(path, i);
      users.push_back(qos(number(value[i], item), item));
    }
    return users;
  }
  check_object(value, path, {"count", "theta"});
  if (!value.contains("count")) fail(join(path, "count"), "missing");
  if (!value.contains("theta")) fail(join(path, "theta"), "missing");
  const long long count = integer(value["count"], join(path, "count"), 1);
  const QosIndex theta = qos(number(value["theta"], join(path, "theta")), join(path, "theta"));
  users.assign(static_cast<std::size_t>(count), theta);
  return users;
}

ChannelSpec parse_channel(const json& value, const std::string& path, int id) {
  check_object(value, path, {"id", "rates", "probs", "avg_snr_db", "thresholds_db", "source"});
  if (value.contains("id") && integer(value["id"], join(path, "id"), 1) != id) {
    fail(join(path, "id"), "channels must be listed with ids 1..M in order");
  }
  if (value.contains("source")) string(value["source"], join(path, "source"));
  if (!value.contains("rates")) fail(join(path, "rates"), "missing");
  std::vector<double> rates = numbers(value["rates"], join(path, "rates"));
  const bool has_probs = value.contains("probs");
  const bool has_snr = value.contains("avg_snr_db") || value.contains("thresholds_db");
  if (has_probs == has_snr) {
    fail(path, "give either probs or avg_snr_db with thresholds_db");
  }
  std::vector<double> probs;
  try {
    if (has_probs) {
      probs = numbers(value["probs"], join(path, "probs"));
    } else {
      if (!value.contains("avg_snr_db")) fail(join(path, "avg_snr_db"), "missing");
      if (!value.contains("thresholds_db")) fail(join(path, "thresholds_db"), "missing");
      const double snr = number(value["avg_snr_db"], join(path, "avg_snr_db"));
      const std::vector<double> thresholds =
          numbers(value["thresholds_db"], join(path, "thresholds_db"));
      if (thresholds.size() + 1 != rates.size()) {
        fail(join(path, "thresholds_db"), "needs one entry fewer than rates");
      }
      probs = rayleigh_state_probs_db(snr, thresholds);
    }
    return ChannelSpec(id, std::move(rates), std::move(probs));
  } catch (const InvalidInput& e) {
    const std::string what = e.what();
    if (what.rfind("config: ", 0) == 0) throw;
    fail(path, what);
  }
}

GameSpec parse_game(const json& value, const std::string& path) {
  check_object(value, path, {"users", "channels", "contention"});
  if (!value.contains("users")) fail(join(path, "users"), "missing");
  if (!value.contains("channels")) fail(join(path, "channels"), "missing");
  std::vector<QosIndex> users = parse_users(value["users"], join(path, "users"));
  const json& channels_json = value["channels"];
  const std::string channels_path = join(path, "channels");
  if (!channels_json.is_array() || channels_json.empty()) {
    fail(channels_path, "expected a non-empty array");
  }
  std::vector<ChannelSpec> channels;
  for (std::size_t i = 0; i < channels_json.size(); ++i) {
    channels.push_back(
        parse_channel(channels_json[i], at_index(channels_path, i), static_cast<int>(i) + 1));
  }
  Contention contention = Contention::kFairShare;
  if (value.contains("contention")) {
    const std::string name = string(value["contention"], join(path, "contention"));
    if (name == "fair_share") {
      contention = Contention::kFairShare;
    } else if (name == "slot_winner") {
      contention = Contention::kSlotWinner;
    } else {
      fail(join(path, "contention"), "expected fair_share or slot_winner");
    }
  }
  return GameSpec(std::move(users), std::move(channels), contention);
}

Algorithm parse_algorithm(const json& value, const std::string& path) {
  const std::string name = string(value, path);
  if (name == "proposed") return Algorithm::kProposed;
  if (name == "sla") return Algorithm::kSla;
  if (name == "random") return Algorithm::kRandom;
  fail(path, "expected proposed, sla or random");
}

SweepSettings parse_sweep(const json& value, const std::string& path, const SimConfig& sim) {
  check_object(value, path, {"variable", "values", "algorithms"});
  SweepSettings sweep;
  if (!value.contains("variable")) fail(join(path, "variable"), "missing");
  const std::string variable = string(value["variable"], join(path, "variable"));
  if (variable == "N") {
    sweep.variable = SweepVariable::kUsers;
  } else if (variable == "theta") {
    sweep.variable = SweepVariable::kTheta;
  } else if (variable == "eta") {
    sweep.variable = SweepVariable::kEta;
  } else {
    fail(join(path, "variable"), "expected N, theta or eta");
  }
  if (!value.contains("values")) fail(join(path, "values"), "missing");
  sweep.values = numbers(value["values"], join(path, "values"));
  if (sweep.values.empty()) fail(join(path, "values"), "needs at least one value");
  for (std::size_t i = 0; i < sweep.values.size(); ++i) {
    try {
      apply_sweep_value(sim, sweep.variable, sweep.values[i]);
    } catch (const InvalidInput& e) {
      fail(at_index(join(path, "values"), i), e.what());
    }
  }
  if (value.contains("algorithms")) {
    const json& algorithms = value["algorithms"];
    const std::string algorithms_path = join(path, "algorithms");
    if (!algorithms.is_array() || algorithms.empty()) {
      fail(algorithms_path, "expected a non-empty array");
    }
    sweep.algorithms.clear();
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      sweep.algorithms.push_back(parse_algorithm(algorithms[i], at_index(algorithms_path, i)));
    }
  }
  return sweep;
}

OdeSettings parse_ode(const json& value, const std::string& path) {
  check_object(value, path, {"dt", "steps", "starts", "stride"});
  OdeSettings ode;
  if (value.contains("dt")) {
    ode.dt = number(value["dt"], join(path, "dt"));
    if (!(ode.dt > 0.0 && ode.dt <= 0.5)) fail(join(path, "dt"), "must lie in (0, 0.5]");
  }
  if (value.contains("steps")) ode.steps = integer(value["steps"], join(path, "steps"), 1);
  if (value.contains("starts")) {
    ode.starts = static_cast<int>(integer(value["starts"], join(path, "starts"), 1));
  }
  if (value.contains("stride")) ode.stride = integer(value["stride"], join(path, "stride"), 1);
  return ode;
}

AnalyzeSettings parse_analyze(const json& value, const std::string& path) {
  check_object(value, path, {"limit", "checks", "list_profiles"});
  AnalyzeSettings analyze;
  if (value.contains("limit")) {
    analyze.limit = unsigned_integer(value["limit"], join(path, "limit"));
    if (analyze.limit == 0) fail(join(path, "limit"), "must be >= 1");
  }
  if (value.contains("checks")) analyze.checks = integer(value["checks"], join(path, "checks"), 0);
  if (value.contains("list_profiles")) {
    analyze.list_profiles = unsigned_integer(value["list_profiles"], join(path, "list_profiles"));
  }
  return analyze;
}

json resolve_preset(const json& doc) {
  if (!doc.is_object()) fail("", "expected a JSON object");
  if (!doc.contains("preset")) return doc;
  const std::string name = string(doc["preset"], "preset");
  std::optional<json> base = preset_document(name);
  if (!base) {
    std::string known;
    for (const auto& preset : preset_names()) known += (known.empty() ? "" : ", ") + preset;
    fail("preset", "unknown preset '" + name + "' (known: " + known + ")");
  }
  json overrides = doc;
  overrides.erase("preset");
  base->merge_patch(overrides);
  return *base;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kProposed:
      return "proposed";
    case Algorithm::kSla:
      return "sla";
    case Algorithm::kRandom:
      return "random";
  }
  return "unknown";
}

std::string_view to_string(Contention contention) {
  return contention == Contention::kFairShare ? "fair_share" : "slot_winner";
}

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::kUsers:
      return "N";
    case SweepVariable::kTheta:
      return "theta";
    case SweepVariable::kEta:
      return "eta";
  }
  return "unknown";
}

ExperimentConfig config_from_json(const json& input) {
  const json doc = resolve_preset(input);
  check_object(doc, "",
               {"game", "algorithm", "eta", "lambda", "sla_step", "sla_r_max", "random_mode",
                "iterations", "trials", "seed", "epsilon", "window", "trace", "plot", "out",
                "sweep", "ode", "analyze"});
  if (!doc.contains("game")) fail("game", "missing");
  ExperimentConfig config(SimConfig(parse_game(doc["game"], "game")));
  if (input.contains("preset")) config.preset = input["preset"].get<std::string>();
  SimConfig& sim = config.sim;

  if (doc.contains("algorithm")) sim.algorithm = parse_algorithm(doc["algorithm"], "algorithm");
  if (doc.contains("eta")) sim.schedule.eta = number(doc["eta"], "eta");
  if (doc.contains("lambda")) {
    const json& lambda = doc["lambda"];
    if (lambda.is_string()) {
      if (lambda.get<std::string>() != "1/t") fail("lambda", "expected \"1/t\" or a number");
    } else {
      sim.schedule.fixed_lambda = number(lambda, "lambda");
    }
  }
  if (doc.contains("sla_step")) sim.sla_step = number(doc["sla_step"], "sla_step");
  if (doc.contains("sla_r_max") && !doc["sla_r_max"].is_null()) {
    sim.sla_rate_max = number(doc["sla_r_max"], "sla_r_max");
  }
  if (doc.contains("random_mode")) {
    const std::string mode = string(doc["random_mode"], "random_mode");
    if (mode == "per_trial") {
      sim.random_mode = RandomMode::kPerTrial;
    } else if (mode == "per_slot") {
      sim.random_mode = RandomMode::kPerSlot;
    } else {
      fail("random_mode", "expected per_trial or per_slot");
    }
  }
  if (doc.contains("iterations")) sim.iterations = integer(doc["iterations"], "iterations", 1);
  if (doc.contains("trials")) {
    const long long trials = integer(doc["trials"], "trials", 1);
    if (trials > std::numeric_limits<int>::max()) fail("trials", "too large");
    sim.trials = static_cast<int>(trials);
  }
  if (doc.contains("seed")) sim.base_seed = unsigned_integer(doc["seed"], "seed");
  if (doc.contains("epsilon")) sim.epsilon = number(doc["epsilon"], "epsilon");
  if (doc.contains("window")) {
    sim.window = integer(doc["window"], "window", 1);
  } else {
    sim.window = std::min(sim.window, sim.iterations);
  }
  if (doc.contains("trace")) sim.record_trace = boolean(doc["trace"], "trace");
  if (doc.contains("plot")) config.plot = boolean(doc["plot"], "plot");
  if (doc.contains("out")) {
    config.out_dir = string(doc["out"], "out");
    if (config.out_dir.empty()) fail("out", "must not be empty");
  }
  try {
    sim.validate();
  } catch (const InvalidInput& e) {
    fail("", e.what());
  }
  if (doc.contains("sweep") && !doc["sweep"].is_null()) {
    config.sweep = parse_sweep(doc["sweep"], "sweep", sim);
  }
  if (doc.contains("ode")) config.ode = parse_ode(doc["ode"], "ode");
  if (doc.contains("analyze")) config.analyze = parse_analyze(doc["analyze"], "analyze");
  return config;
}

ExperimentConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config: malformed JSON: ") + e.what());
  }
  return config_from_json(doc);
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config_text(text.str());
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

json config_to_json(const ExperimentConfig& config) {
  const SimConfig& sim = config.sim;
  json users = json::array();
  for (const QosIndex& theta : sim.game.thetas()) users.push_back(theta.value());
  json channels = json::array();
  for (const ChannelSpec& channel : sim.game.channels()) {
    channels.push_back(
        {{"id", channel.id()}, {"rates", channel.rates()}, {"probs", channel.probs()}});
  }
  json doc = {
      {"game",
       {{"users", users},
        {"channels", channels},
        {"contention", to_string(sim.game.contention())}}},
      {"algorithm", to_string(sim.algorithm)},
      {"eta", sim.schedule.eta},
      {"sla_step", sim.sla_step},
      {"random_mode", sim.random_mode == RandomMode::kPerTrial ? "per_trial" : "per_slot"},
      {"iterations", sim.iterations},
      {"trials", sim.trials},
      {"seed", sim.base_seed},
      {"epsilon", sim.epsilon},
      {"window", sim.window},
      {"trace", sim.record_trace},
      {"plot", config.plot},
      {"out", config.out_dir.string()},
      {"ode",
       {{"dt", config.ode.dt},
        {"steps", config.ode.steps},
        {"starts", config.ode.starts},
        {"stride", config.ode.stride}}},
      {"analyze",
       {{"limit", config.analyze.limit},
        {"checks", config.analyze.checks},
        {"list_profiles", config.analyze.list_profiles}}},
  };
  if (sim.schedule.fixed_lambda) {
    doc["lambda"] = *sim.schedule.fixed_lambda;
  } else {
    doc["lambda"] = "1/t";
  }
  doc["sla_r_max"] = sim.sla_rate_max ? json(*sim.sla_rate_max) : json(nullptr);
  if (config.sweep) {
    json algorithms = json::array();
    for (Algorithm algorithm : config.sweep->algorithms) algorithms.push_back(to_string(algorithm));
    doc["sweep"] = {{"variable", to_string(config.sweep->variable)},
                    {"values", config.sweep->values},
                    {"algorithms", algorithms}};
  } else {
    doc["sweep"] = nullptr;
  }
  if (!config.preset.empty()) doc["preset"] = config.preset;
  return doc;
}

}  // namespace specgame::cli
