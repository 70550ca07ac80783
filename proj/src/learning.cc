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

#include "specgame/learning.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "specgame/errors.h"

namespace specgame {
namespace {

// Rows drift from 1 only by rounding; rescale once it exceeds this.
constexpr double kRenormalizeDrift = 1e-12;

void renormalize_if_drifted(std::span<double> row) {
  double sum = 0.0;
  for (double x : row) sum += x;
  if (std::abs(sum - 1.0) > kRenormalizeDrift) {
    for (double& x : row) x /= sum;
  }
}

}  // namespace

LearnerState init_state(int num_users, int num_channels) {
  if (num_users < 1 || num_channels < 1) {
    throw InvalidInput("the learner needs at least one user and one channel");
  }
  return {MixedProfile(num_users, num_channels), Matrix(num_users, num_channels, 0.0), 0};
}

ActionProfile select_actions(const MixedProfile& p, Rng& rng) {
  std::vector<int> channels(p.num_users());
  for (int n = 0; n < p.num_users(); ++n) {
    channels[n] = static_cast<int>(inverse_cdf_index(p.row(n), uniform01(rng)));
  }
  return ActionProfile(std::move(channels));
}

void update_estimates(LearnerState& state, const ActionProfile& profile,
                      std::span<const double> payoffs, std::span<const QosIndex> thetas,
                      const StepSchedule& schedule) {
  const double lambda = schedule.lambda(state.iteration);
  for (int n = 0; n < state.q.rows(); ++n) {
    if (payoffs[n] < 0.0) throw InvalidInput("payoffs must be non-negative");
    const int m = profile[n];
    double& q = state.q(n, m);
    q += lambda * (payoff_transform(payoffs[n], thetas[n]) - q);
    const double bound = 1.0 / thetas[n].value();
    if (!(q >= 0.0) || q > bound * (1.0 + 1e-12)) {
      throw InvariantViolation("estimate Q[" + std::to_string(n + 1) + "][" +
                               std::to_string(m + 1) + "] = " + std::to_string(q) +
                               " left [0, 1/theta]");
    }
  }
}

void update_probabilities(LearnerState& state, const StepSchedule& schedule) {
  const double log_base = std::log1p(schedule.eta_at(state.iteration));
  for (int n = 0; n < state.p.num_users(); ++n) {
    auto p = state.p.row(n);
    const auto q = state.q.row(n);
    // (1 + eta)^Q = exp(Q ln(1 + eta)); the common factor exp(-Q_max ln(1 + eta))
    // cancels in the normalisation and keeps every weight <= p.
    const double q_max = *std::max_element(q.begin(), q.end());
    double total = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
      p[m] *= std::exp((q[m] - q_max) * log_base);
      total += p[m];
    }
    for (double& x : p) x /= total;
    renormalize_if_drifted(p);
  }
}

void learner_step(LearnerState& state, const ActionProfile& profile,
                  std::span<const double> payoffs, std::span<const QosIndex> thetas,
                  const StepSchedule& schedule) {
  update_probabilities(state, schedule);
  update_estimates(state, profile, payoffs, thetas, schedule);
  ++state.iteration;
}

SlaState init_sla_state(int num_users, int num_channels, double step, double rate_max) {
  if (!(step > 0.0 && step < 1.0)) throw InvalidInput("SLA step size must lie in (0, 1)");
  if (!(rate_max > 0.0)) throw InvalidInput("SLA payoff normaliser must be positive");
  return {MixedProfile(num_users, num_channels), step, rate_max};
}

void sla_update(SlaState& state, const ActionProfile& profile, std::span<const double> payoffs) {
  for (int n = 0; n < state.p.num_users(); ++n) {
    if (payoffs[n] < 0.0) throw InvalidInput("payoffs must be non-negative");
    const double reward = std::min(payoffs[n] / state.rate_max, 1.0);
    if (reward == 0.0) continue;
    auto p = state.p.row(n);
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double target = static_cast<int>(j) == profile[n] ? 1.0 : 0.0;
      p[j] += state.step * reward * (target - p[j]);
    }
    renormalize_if_drifted(p);
  }
}

ActionProfile random_baseline_profile(int num_users, int num_channels, Rng& rng) {
  std::vector<int> channels(num_users);
  for (int& a : channels) a = static_cast<int>(uniform_index(rng, num_channels));
  return ActionProfile(std::move(channels));
}

bool is_converged(const MixedProfile& p, double epsilon) {
  for (int n = 0; n < p.num_users(); ++n) {
    const auto row = p.row(n);
    if (*std::max_element(row.begin(), row.end()) < 1.0 - epsilon) return false;
  }
  return true;
}

ActionProfile argmax_profile(const MixedProfile& p) {
  std::vector<int> channels(p.num_users());
  for (int n = 0; n < p.num_users(); ++n) {
    const auto row = p.row(n);
    channels[n] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return ActionProfile(std::move(channels));
}

}  // namespace specgame
