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

#ifndef SPECGAME_SIMULATOR_H_
#define SPECGAME_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "specgame/game.h"
#include "specgame/learning.h"
#include "specgame/mixed_profile.h"
#include "specgame/random.h"

namespace specgame {

enum class Algorithm { kProposed, kSla, kRandom };

// Whether the random baseline draws one profile per trial or per slot.
enum class RandomMode { kPerTrial, kPerSlot };

struct SimConfig {
  explicit SimConfig(GameSpec game_spec) : game(std::move(game_spec)) {}

  GameSpec game;
  Algorithm algorithm = Algorithm::kProposed;
  StepSchedule schedule;
  double sla_step = 0.08;
  // Unset: the largest channel rate.
  std::optional<double> sla_rate_max;
  RandomMode random_mode = RandomMode::kPerTrial;
  long long iterations = 2000;
  int trials = 1;
  std::uint64_t base_seed = 1;
  double epsilon = kDefaultConvergenceEpsilon;
  // Stride, in slots, of the recorded evolution curves.
  long long window = 10;
  // Keep per-slot p, Q and payoffs (large).
  bool record_trace = false;

  // Throws InvalidInput on violated invariants.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Per-user payoffs for one slot. Slot winner: on every channel one uniformly
// chosen contender takes the realised rate; one draw per shared channel, in
// channel order. Fair share: each contender gets rate / c_m.
std::vector<double> resolve_contention(Contention model, std::span<const double> realization,
                                       const ActionProfile& profile, Rng& rng);

struct SlotTrace {
  ActionProfile actions;
  std::vector<double> payoffs;
  Matrix p;  // strategies used to draw `actions`
  Matrix q;  // estimates before the slot's update (zeros for the baselines)
};

struct EvolutionPoint {
  long long slot;
  // Closed-form aggregate effective capacity at the current argmax profile.
  double aggregate_closed;
  // Sum over users of the empirical effective capacity of the last `window`
  // slots.
  double aggregate_window;
};

struct TrialResult {
  int trial = 0;
  ActionProfile final_profile;
  // First slot at whose start every user is epsilon-pure; `iterations` when
  // that only happens after the final update.
  std::optional<long long> convergence_slot;
  std::vector<double> ec_empirical;
  std::vector<double> ec_closed;
  double aggregate_closed = 0.0;
  double aggregate_empirical = 0.0;
  MixedProfile final_strategies;
  std::vector<EvolutionPoint> evolution;
  std::vector<SlotTrace> trace;
};

// Runs one trial on the stream trial_rng(base_seed, trial_index).
TrialResult run_trial(const SimConfig& config, int trial_index);

struct ExperimentSummary {
  std::vector<TrialResult> trials;  // in trial-index order
  double mean_aggregate_closed = 0.0;
  double std_aggregate_closed = 0.0;  // sample std, 0 for a single trial
  double mean_aggregate_empirical = 0.0;
  double std_aggregate_empirical = 0.0;
  double convergence_fraction = 0.0;
  // Mean over converged trials; unset when none converged.
  std::optional<double> mean_convergence_slot;
  // Evolution curves averaged over trials.
  std::vector<EvolutionPoint> mean_evolution;
};

// Trials run on up to `threads` workers; the result does not depend on it.
ExperimentSummary run_experiment(const SimConfig& config, int threads = 1);

enum class SweepVariable { kUsers, kTheta, kEta };

struct SweepRow {
  double value;
  Algorithm algorithm;
  ExperimentSummary summary;
};

// Applies one value of the swept variable to the template config. kUsers
// resizes the user list, cycling through the template's thetas; kTheta sets
// every user's theta; kEta sets the learning parameter.
SimConfig apply_sweep_value(const SimConfig& base, SweepVariable variable, double value);

// One experiment per (value, algorithm), rows ordered value-major.
std::vector<SweepRow> sweep(const SimConfig& base, SweepVariable variable,
                            std::span<const double> values,
                            std::span<const Algorithm> algorithms, int threads = 1);

// Exact per-slot law of user n's rate under the per-slot random baseline
// (everyone uniform every slot).
RateDistribution per_slot_random_distribution(const GameSpec& game, int n);

}  // namespace specgame

#endif  // SPECGAME_SIMULATOR_H_
