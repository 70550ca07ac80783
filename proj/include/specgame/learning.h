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

#ifndef SPECGAME_LEARNING_H_
#define SPECGAME_LEARNING_H_

#include <optional>
#include <span>
#include <vector>

#include "specgame/effective_capacity.h"
#include "specgame/game.h"
#include "specgame/mixed_profile.h"
#include "specgame/random.h"

namespace specgame {

// Step factor lambda_i and learning parameter eta_i of the proposed learner.
struct StepSchedule {
  // Unset means lambda_i = 1 / (i + 1).
  std::optional<double> fixed_lambda;
  double eta = 0.1;

  double lambda(long long i) const {
    return fixed_lambda ? *fixed_lambda : 1.0 / static_cast<double>(i + 1);
  }
  double eta_at(long long /*i*/) const { return eta; }

  friend bool operator==(const StepSchedule&, const StepSchedule&) = default;
};

// State of the proposed learner for all users.
struct LearnerState {
  MixedProfile p;       // channel selection probabilities
  Matrix q;             // reward estimates, 0 <= Q_nm <= 1 / theta_n
  long long iteration;  // slot index i
};

// Uniform strategies, zero estimates, i = 0.
LearnerState init_state(int num_users, int num_channels);

// One channel per user drawn from its row of `p`, users in index order.
ActionProfile select_actions(const MixedProfile& p, Rng& rng);

// Q_nm += lambda_i * 1{a_n = m} * (payoff_transform(r_n) - Q_nm). Throws
// InvariantViolation if an estimate leaves [0, 1/theta_n].
void update_estimates(LearnerState& state, const ActionProfile& profile,
                      std::span<const double> payoffs, std::span<const QosIndex> thetas,
                      const StepSchedule& schedule);

// p_nm <- p_nm (1 + eta_i)^{Q_nm} / sum_m' p_nm' (1 + eta_i)^{Q_nm'}, using the
// state's current estimates.
void update_probabilities(LearnerState& state, const StepSchedule& schedule);

// One full slot of the proposed learner: the probability update uses the
// estimates Q(i) from before this slot's payoff, then the estimates absorb
// the payoff, then i advances.
void learner_step(LearnerState& state, const ActionProfile& profile,
                  std::span<const double> payoffs, std::span<const QosIndex> thetas,
                  const StepSchedule& schedule);

// Linear reward-inaction learning automata, the expected-throughput baseline.
struct SlaState {
  MixedProfile p;
  double step;      // b, in (0, 1)
  double rate_max;  // payoff normaliser, > 0
};

SlaState init_sla_state(int num_users, int num_channels, double step, double rate_max);

// For every user: with r_hat = min(r / rate_max, 1),
// p_j += b * r_hat * (1{j = a_n} - p_j).
void sla_update(SlaState& state, const ActionProfile& profile, std::span<const double> payoffs);

// Independent uniform channel per user.
ActionProfile random_baseline_profile(int num_users, int num_channels, Rng& rng);

inline constexpr double kDefaultConvergenceEpsilon = 0.01;

// Every user puts at least 1 - epsilon on a single channel.
bool is_converged(const MixedProfile& p, double epsilon = kDefaultConvergenceEpsilon);

// Per-user argmax of p, ties to the lowest channel.
ActionProfile argmax_profile(const MixedProfile& p);

}  // namespace specgame

#endif  // SPECGAME_LEARNING_H_
