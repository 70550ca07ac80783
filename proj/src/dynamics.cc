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

#include "specgame/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specgame/errors.h"

namespace specgame {
namespace {

// Poisson-binomial law of the number of users in `users` choosing `channel`.
std::vector<double> count_distribution(const MixedProfile& P, int channel, int skip_user) {
  std::vector<double> dist(P.num_users() + 1, 0.0);
  dist[0] = 1.0;
  int seen = 0;
  for (int k = 0; k < P.num_users(); ++k) {
    if (k == skip_user) continue;
    const double q = P(k, channel);
    ++seen;
    for (int c = seen; c >= 1; --c) dist[c] = dist[c] * (1.0 - q) + dist[c - 1] * q;
    dist[0] *= 1.0 - q;
  }
  return dist;
}

void check_shape(const GameSpec& game, const MixedProfile& P) {
  if (P.num_users() != game.num_users() || P.num_channels() != game.num_channels()) {
    throw InvalidInput("mixed profile shape does not match the game");
  }
}

}  // namespace

std::vector<double> others_on_channel(const MixedProfile& P, int user, int channel) {
  auto dist = count_distribution(P, channel, user);
  dist.pop_back();
  return dist;
}

double omega(const UtilityTable& approx_table, int user, int channel, const MixedProfile& P) {
  const auto dist = count_distribution(P, channel, user);
  double value = 0.0;
  for (int c = 0; c < P.num_users(); ++c) {
    if (dist[c] != 0.0) value += dist[c] * approx_table(user, channel, c + 1);
  }
  return value;
}

double omega(const GameSpec& game, int user, int channel, const MixedProfile& P) {
  check_shape(game, P);
  return omega(UtilityTable(game, UtilityKind::kApproximated), user, channel, P);
}

Matrix ode_rhs(const UtilityTable& approx_table, const MixedProfile& P) {
  const int num_users = P.num_users();
  const int num_channels = P.num_channels();
  Matrix rhs(num_users, num_channels, 0.0);
  std::vector<double> w(num_channels);
  for (int n = 0; n < num_users; ++n) {
    double average = 0.0;
    for (int m = 0; m < num_channels; ++m) {
      w[m] = omega(approx_table, n, m, P);
      average += P(n, m) * w[m];
    }
    for (int m = 0; m < num_channels; ++m) rhs(n, m) = P(n, m) * (w[m] - average);
  }
  return rhs;
}

Matrix ode_rhs(const GameSpec& game, const MixedProfile& P) {
  check_shape(game, P);
  return ode_rhs(UtilityTable(game, UtilityKind::kApproximated), P);
}

double potential_of_mixed(const GameSpec& game, const MixedProfile& P, QosIndex theta_common) {
  check_shape(game, P);
  for (int n = 0; n < game.num_users(); ++n) {
    if (!(game.theta(n) == theta_common)) {
      throw InvalidInput("the mixed potential needs every user to share theta");
    }
  }
  const double theta = theta_common.value();
  // E[sum_{l=1}^{c_m} g_m(l)] = sum_l P(c_m >= l) g_m(l).
  double expected_v = 0.0;
  for (int m = 0; m < game.num_channels(); ++m) {
    const auto dist = count_distribution(P, m, -1);
    const auto& ch = game.channel(m);
    double at_least = 1.0 - dist[0];
    for (int l = 1; l <= game.num_users(); ++l) {
      if (at_least <= 0.0) break;
      const RateDistribution law = rate_distribution_on(ch, l, game.contention());
      double g = 0.0;
      for (std::size_t k = 0; k < law.values().size(); ++k) {
        g += law.probs()[k] * std::exp(-theta * law.values()[k]);
      }
      expected_v += at_least * g;
      at_least -= dist[l];
    }
  }
  return (1.0 - expected_v) / theta;
}

bool check_stationarity(const GameSpec& game, const MixedProfile& P, double tol) {
  return ode_rhs(game, P).max_abs() <= tol;
}

Trajectory integrate(const GameSpec& game, const MixedProfile& P0, double dt, long long steps) {
  check_shape(game, P0);
  if (!(dt > 0.0 && dt <= 0.5)) throw InvalidInput("ODE step dt must lie in (0, 0.5]");
  if (steps < 0) throw InvalidInput("ODE step count must be non-negative");
  const UtilityTable table(game, UtilityKind::kApproximated);
  const bool homogeneous = game.is_homogeneous();
  auto potential = [&](const MixedProfile& P) {
    return homogeneous ? potential_of_mixed(game, P, game.theta(0))
                       : std::numeric_limits<double>::quiet_NaN();
  };

  Trajectory traj;
  traj.states.reserve(steps + 1);
  traj.states.push_back(P0);
  traj.potential.push_back(potential(P0));
  MixedProfile P = P0;
  for (long long step = 0; step < steps; ++step) {
    const Matrix rhs = ode_rhs(table, P);
    traj.max_rhs.push_back(rhs.max_abs());
    for (int n = 0; n < P.num_users(); ++n) {
      for (int m = 0; m < P.num_channels(); ++m) P(n, m) += dt * rhs(n, m);
    }
    for (double x : P.data()) {
      if (!std::isfinite(x)) {
        throw IntegrationDiverged("ODE integration produced a non-finite value at step " +
                                      std::to_string(step + 1),
                                  step + 1);
      }
    }
    P.renormalize();
    traj.states.push_back(P);
    traj.potential.push_back(potential(P));
  }
  traj.max_rhs.push_back(ode_rhs(table, P).max_abs());
  return traj;
}

double distance_to_pure(const MixedProfile& P, const ActionProfile& profile) {
  double d = 0.0;
  for (int n = 0; n < P.num_users(); ++n) d = std::max(d, 1.0 - P(n, profile[n]));
  return d;
}

MixedProfile random_interior_profile(int num_users, int num_channels, Rng& rng) {
  Matrix probs(num_users, num_channels);
  for (int n = 0; n < num_users; ++n) {
    double total = 0.0;
    for (int m = 0; m < num_channels; ++m) {
      // Normalised unit exponentials are uniform on the simplex.
      probs(n, m) = -std::log1p(-uniform01(rng)) + 1e-12;
      total += probs(n, m);
    }
    for (int m = 0; m < num_channels; ++m) probs(n, m) /= total;
  }
  return MixedProfile(std::move(probs));
}

}  // namespace specgame
