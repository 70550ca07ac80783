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


#include "specgame/cli/commands.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "specgame/cli/csv.h"
#include "specgame/cli/plot.h"
#include "specgame/cli/presets.h"
#include "specgame/dynamics.h"
#include "specgame/errors.h"
#include "specgame/learning.h"

namespace specgame::cli {
namespace {

using nlohmann::json;

struct Flags {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<long long> iterations;
  bool plot = false;
  bool trace = false;
  std::string out;
};

ExperimentConfig load(const Flags& flags) {
  json doc = json::object();
  if (!flags.config.empty()) {
    try {
      doc = json::parse(read_file(flags.config));
    } catch (const json::parse_error& e) {
      throw InvalidInput(flags.config + ": config: malformed JSON: " + e.what());
    }
    if (!doc.is_object()) throw InvalidInput(flags.config + ": config: expected a JSON object");
  } else if (flags.preset.empty()) {
    throw InvalidInput("either --config or --preset is required");
  }
  if (!flags.preset.empty()) doc["preset"] = flags.preset;
  if (flags.seed) doc["seed"] = *flags.seed;
  if (flags.trials) doc["trials"] = *flags.trials;
  if (flags.iterations) {
    doc["iterations"] = *flags.iterations;
    if (!doc.contains("window")) doc["window"] = std::min<long long>(10, *flags.iterations);
  }
  if (flags.plot) doc["plot"] = true;
  if (flags.trace) doc["trace"] = true;
  if (!flags.out.empty()) doc["out"] = flags.out;
  ExperimentConfig config = config_from_json(doc);
  return config;
}

void prepare_output(const ExperimentConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) throw InvalidInput("cannot create output directory " + config.out_dir.string());
  write_file(config.out_dir / "resolved_config.json", config_to_json(config).dump(2) + "\n");
}

std::string conv_text(const std::optional<long long>& slot) {
  return slot ? std::to_string(*slot) : std::string("none");
}

json values_json(std::span<const double> values) {
  json out = json::array();
  for (double v : values) out.push_back(v);
  return out;
}

void finish(const ExperimentConfig& config) {
  if (config.plot) render_plots(config.out_dir);
}

int do_analyze(const ExperimentConfig& config) {
  prepare_output(config);
  const json report = analyze_report(config);
  write_file(config.out_dir / "analyze.json", report.dump(2) + "\n");
  fmt::print("analyze: N={} M={} profiles={} nash={} sign_disagreements={}\n",
             config.sim.game.num_users(), config.sim.game.num_channels(),
             report["profiles"].get<std::uint64_t>(), report["nash"].size(),
             report["potential"]["sign_disagreements"].dump());
  return 0;
}

int do_learn(const ExperimentConfig& config) {
  prepare_output(config);
  const TrialResult trial = run_trial(config.sim, 0);
  write_file(config.out_dir / "trials.csv", trials_csv(std::span(&trial, 1)));
  write_file(config.out_dir / "users.csv", users_csv(std::span(&trial, 1)));
  write_file(config.out_dir / "evolution.csv", evolution_csv(trial.evolution));
  if (config.sim.record_trace) write_file(config.out_dir / "trace.csv", trace_csv(trial));
  finish(config);
  fmt::print("learn: profile={} conv_slot={} agg_ec_closed={} agg_ec_empirical={}\n",
             trial.final_profile.to_string(), conv_text(trial.convergence_slot),
             format_number(trial.aggregate_closed), format_number(trial.aggregate_empirical));
  return 0;
}

int do_experiment(const ExperimentConfig& config) {
  prepare_output(config);
  const ExperimentSummary summary = run_experiment(config.sim, worker_threads());
  write_file(config.out_dir / "trials.csv", trials_csv(summary.trials));
  write_file(config.out_dir / "users.csv", users_csv(summary.trials));
  write_file(config.out_dir / "summary.csv", summary_csv(summary));
  write_file(config.out_dir / "evolution.csv", evolution_csv(summary.mean_evolution));
  if (config.sim.record_trace) {
    write_file(config.out_dir / "trace.csv", trace_csv(summary.trials.front()));
  }
  finish(config);
  fmt::print("experiment: trials={} mean_agg_ec_closed={} std={} converged={}\n",
             summary.trials.size(), format_number(summary.mean_aggregate_closed),
             format_number(summary.std_aggregate_closed),
             format_number(summary.convergence_fraction));
  return 0;
}

int do_sweep(const ExperimentConfig& config) {
  if (!config.sweep) throw InvalidInput("sweep: the config has no sweep section");
  prepare_output(config);
  const auto rows = sweep(config.sim, config.sweep->variable, config.sweep->values,
                          config.sweep->algorithms, worker_threads());
  write_file(config.out_dir / "sweep.csv", sweep_csv(rows, config.sweep->variable));
  finish(config);
  fmt::print("sweep: variable={} values={} algorithms={} rows={}\n",
             to_string(config.sweep->variable), config.sweep->values.size(),
             config.sweep->algorithms.size(), rows.size());
  return 0;
}

int do_ode(const ExperimentConfig& config) {
  prepare_output(config);
  const GameSpec& game = config.sim.game;
  const int num_users = game.num_users();
  const int num_channels = game.num_channels();
  std::vector<ActionProfile> nash;
  const bool enumerable = profile_count(num_users, num_channels) <= config.analyze.limit;
  if (enumerable) nash = enumerate_nash(game, config.analyze.limit, UtilityKind::kApproximated);

  std::vector<Trajectory> trajectories;
  json starts = json::array();
  int near = 0;
  double worst_drop = 0.0;
  for (int s = 0; s < config.ode.starts; ++s) {
    Rng rng = trial_rng(config.sim.base_seed, static_cast<std::uint64_t>(s));
    const MixedProfile start = random_interior_profile(num_users, num_channels, rng);
    trajectories.push_back(integrate(game, start, config.ode.dt, config.ode.steps));
    const Trajectory& t = trajectories.back();
    for (std::size_t k = 1; k < t.potential.size(); ++k) {
      if (!std::isnan(t.potential[k])) worst_drop = std::max(worst_drop, t.potential[k - 1] - t.potential[k]);
    }
    json entry = {{"start", s}, {"final_max_rhs", t.max_rhs.back()}};
    if (enumerable) {
      double best = std::numeric_limits<double>::infinity();
      std::string closest;
      for (const auto& profile : nash) {
        const double d = distance_to_pure(t.states.back(), profile);
        if (d < best) {
          best = d;
          closest = profile.to_string();
        }
      }
      entry["nearest_nash"] = closest;
      entry["distance"] = best;
      if (best <= 0.05) ++near;
    }
    starts.push_back(entry);
  }
  write_file(config.out_dir / "ode.csv", ode_csv(trajectories, config.ode.stride));
  json report = {{"dt", config.ode.dt},
                 {"steps", config.ode.steps},
                 {"worst_potential_drop", worst_drop},
                 {"starts", starts}};
  if (enumerable) {
    json list = json::array();
    for (const auto& profile : nash) list.push_back(profile.to_string());
    report["nash_approx"] = list;
    report["near_nash_fraction"] = static_cast<double>(near) / config.ode.starts;
  }
  write_file(config.out_dir / "ode.json", report.dump(2) + "\n");
  finish(config);
  fmt::print("ode: starts={} near_nash={} worst_potential_drop={}\n", config.ode.starts,
             enumerable ? fmt::format("{}/{}", near, config.ode.starts) : std::string("n/a"),
             format_number(worst_drop));
  return 0;
}

}  // namespace

int worker_threads() {
  if (const char* env = std::getenv("SPECGAME_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 1 || value > 1024) {
      throw InvalidInput("SPECGAME_THREADS must be an integer in [1, 1024]");
    }
    return static_cast<int>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json analyze_report(const ExperimentConfig& config) {
  const GameSpec& game = config.sim.game;
  const int num_users = game.num_users();
  const int num_channels = game.num_channels();
  const std::uint64_t count = profile_count(num_users, num_channels);
  json report = {{"num_users", num_users},
                 {"num_channels", num_channels},
                 {"contention", to_string(game.contention())},
                 {"homogeneous", game.is_homogeneous()},
                 {"profiles", count}};

  json nash = json::array();
  for (const auto& profile : enumerate_nash(game, config.analyze.limit)) {
    nash.push_back(profile.to_string());
  }
  report["nash"] = nash;
  json nash_approx = json::array();
  for (const auto& profile :
       enumerate_nash(game, config.analyze.limit, UtilityKind::kApproximated)) {
    nash_approx.push_back(profile.to_string());
  }
  report["nash_approx"] = nash_approx;

  Rng rng = trial_rng(config.sim.base_seed, 0);
  const PotentialReport potential = verify_potentials(game, rng, config.analyze.checks);
  report["potential"] = {{"deviations_checked", potential.deviations_checked},
                         {"exact_max_discrepancy", potential.exact_max_discrepancy},
                         {"ordinal_checked", potential.ordinal_checked}};
  if (potential.ordinal_checked) {
    report["potential"]["sign_disagreements"] = potential.sign_disagreements;
    report["potential"]["zero_mismatches"] = potential.zero_mismatches;
  } else {
    report["potential"]["sign_disagreements"] = nullptr;
    report["potential"]["zero_mismatches"] = nullptr;
  }

  ActionProfile start{std::vector<int>(num_users, 0)};
  for (int n = 0; n < num_users; ++n) {
    start[n] = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(num_channels)));
  }
  try {
    const BestResponseResult path =
        best_response_path(game, start, rng, 50 * num_users * num_channels);
    report["best_response"] = {
        {"start", start.to_string()}, {"end", path.profile.to_string()}, {"rounds", path.rounds}};
  } catch (const NoConvergence& e) {
    report["best_response"] = {{"start", start.to_string()},
                               {"end", nullptr},
                               {"last", e.last_profile().to_string()}};
  }

  json profiles = json::array();
  if (count <= config.analyze.list_profiles) {
    ActionProfile profile(std::vector<int>(num_users, 0));
    do {
      std::vector<double> ec;
      std::vector<double> approx;
      std::vector<double> expected;
      for (int n = 0; n < num_users; ++n) {
        ec.push_back(utility(game, profile, n));
        approx.push_back(approx_utility(game, profile, n));
        expected.push_back(aux_expected_utility(game, profile, n));
      }
      json entry = {{"profile", profile.to_string()},
                    {"utility", values_json(ec)},
                    {"approx_utility", values_json(approx)},
                    {"expected_utility", values_json(expected)},
                    {"rosenthal_potential", rosenthal_potential(game, profile)}};
      if (game.is_homogeneous()) {
        entry["ordinal_potential"] = ordinal_potential(game, profile, game.theta(0));
      }
      profiles.push_back(entry);
    } while (next_profile(profile, num_channels));
  }
  report["profile_table"] = profiles;
  return report;
}

int run_command(int argc, const char* const* argv) {
  CLI::App app{"Multi-user spectrum access game simulator", "specgame"};
  app.require_subcommand(1);
  Flags flags;
  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const ExperimentConfig&);
  };
  const Entry entries[] = {
      {"analyze", "Enumerate equilibria and check the potential functions", do_analyze},
      {"learn", "Run one learning trial", do_learn},
      {"experiment", "Run independent trials and summarise them", do_experiment},
      {"sweep", "Run an experiment per value of the swept variable", do_sweep},
      {"ode", "Integrate the mean dynamics from random interior starts", do_ode},
  };
  std::string presets;
  for (const auto& name : preset_names()) presets += (presets.empty() ? "" : ", ") + name;
  for (const Entry& entry : entries) {
    CLI::App* sub = app.add_subcommand(entry.name, entry.help);
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--preset", flags.preset, "Preset name (" + presets + ")");
    sub->add_option("--seed", flags.seed, "Base seed");
    sub->add_option("--trials", flags.trials, "Number of trials");
    sub->add_option("--iterations", flags.iterations, "Slots per trial");
    sub->add_flag("--plot", flags.plot, "Write SVG plots");
    sub->add_flag("--trace", flags.trace, "Write the per-slot trace");
    sub->add_option("--out", flags.out, "Output directory");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    for (const Entry& entry : entries) {
      if (app.got_subcommand(entry.name)) return entry.run(load(flags));
    }
  } catch (const std::exception& e) {
    std::cerr << "specgame: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& arg : args) argv.push_back(arg.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data());
}

}  // namespace specgame::cli
