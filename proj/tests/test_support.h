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


// Instance generators and independent reference computations for the tests.
// Nothing here calls the library routine it is used to check.

#ifndef SPECGAME_TESTS_TEST_SUPPORT_H_
#define SPECGAME_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "specgame/channel_model.h"
#include "specgame/effective_capacity.h"
#include "specgame/game.h"
#include "specgame/mixed_profile.h"
#include "specgame/random.h"

namespace specgame::testing {

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

inline std::vector<double> random_probs(Rng& rng, int k) {
  std::vector<double> probs(k);
  double total = 0.0;
  for (double& p : probs) {
    p = 0.05 + uniform01(rng);
    total += p;
  }
  double head = 0.0;
  for (int i = 0; i + 1 < k; ++i) {
    probs[i] /= total;
    head += probs[i];
  }
  probs[k - 1] = 1.0 - head;
  return probs;
}

// K in [1, max_states]. Integer rates are distinct draws from {0..6}, which
// produces exact payoff ties; continuous rates are uniform on [0, 6].
inline ChannelSpec random_channel(Rng& rng, int id, int max_states, bool continuous,
                                  int min_states = 1) {
  const int k = uniform_int(rng, min_states, max_states);
  std::vector<double> rates;
  if (continuous) {
    for (int i = 0; i < k; ++i) rates.push_back(6.0 * uniform01(rng));
  } else {
    std::vector<double> pool = {0, 1, 2, 3, 4, 5, 6};
    for (int i = 0; i < k; ++i) {
      const std::size_t j = uniform_index(rng, pool.size());
      rates.push_back(pool[j]);
      pool.erase(pool.begin() + static_cast<long>(j));
    }
  }
  std::sort(rates.begin(), rates.end());
  return ChannelSpec(id, rates, random_probs(rng, k));
}

struct InstanceShape {
  int min_users = 2;
  int max_users = 5;
  int min_channels = 2;
  int max_channels = 4;
  int min_states = 1;
  int max_states = 4;
  bool continuous_rates = false;
  Contention contention = Contention::kFairShare;
};

// Exactly `users` users and `channels` channels.
inline InstanceShape fixed_shape(int users, int channels, bool continuous) {
  InstanceShape shape;
  shape.min_users = shape.max_users = users;
  shape.min_channels = shape.max_channels = channels;
  shape.continuous_rates = continuous;
  return shape;
}

inline const std::vector<double>& theta_grid() {
  static const std::vector<double> kGrid = {1e-2, 1e-1, 1.0};
  return kGrid;
}

inline std::vector<ChannelSpec> random_channels(Rng& rng, int count, const InstanceShape& shape) {
  std::vector<ChannelSpec> channels;
  for (int m = 0; m < count; ++m) {
    channels.push_back(
        random_channel(rng, m + 1, shape.max_states, shape.continuous_rates, shape.min_states));
  }
  return channels;
}

// Every user shares one theta drawn from theta_grid().
inline GameSpec random_homogeneous_game(Rng& rng, const InstanceShape& shape) {
  const int n = uniform_int(rng, shape.min_users, shape.max_users);
  const int m = uniform_int(rng, shape.min_channels, shape.max_channels);
  const double theta = theta_grid()[uniform_index(rng, theta_grid().size())];
  auto channels = random_channels(rng, m, shape);
  return GameSpec(std::vector<QosIndex>(n, QosIndex(theta)), std::move(channels),
                  shape.contention);
}

// Each user draws its own theta from theta_grid().
inline GameSpec random_heterogeneous_game(Rng& rng, const InstanceShape& shape) {
  const int n = uniform_int(rng, shape.min_users, shape.max_users);
  const int m = uniform_int(rng, shape.min_channels, shape.max_channels);
  std::vector<QosIndex> users;
  for (int i = 0; i < n; ++i) users.emplace_back(theta_grid()[uniform_index(rng, theta_grid().size())]);
  auto channels = random_channels(rng, m, shape);
  return GameSpec(std::move(users), std::move(channels), shape.contention);
}

// Reference law of a user's per-slot rate, written from the contention rule
// directly: fair share splits the realized rate, slot winner gives the whole
// rate to one of c contenders.
inline std::map<double, double> reference_law(const GameSpec& game, const std::vector<int>& a,
                                              int n) {
  int c = 0;
  for (int k : a) c += k == a[n];
  const ChannelSpec& ch = game.channel(a[n]);
  std::map<double, double> law;
  for (std::size_t k = 0; k < ch.num_states(); ++k) {
    if (game.contention() == Contention::kFairShare) {
      law[ch.rates()[k] / c] += ch.probs()[k];
    } else {
      law[ch.rates()[k]] += ch.probs()[k] / c;
      law[0.0] += ch.probs()[k] * (1.0 - 1.0 / c);
    }
  }
  return law;
}

inline long double reference_exp_mean(const std::map<double, double>& law, double theta) {
  long double e = 0.0L;
  for (const auto& [x, p] : law) e += static_cast<long double>(p) * std::exp(-static_cast<long double>(theta) * x);
  return e;
}

inline double reference_ec(const std::map<double, double>& law, double theta) {
  return static_cast<double>(-std::log(reference_exp_mean(law, theta)) / theta);
}

inline double reference_approx(const std::map<double, double>& law, double theta) {
  return static_cast<double>((1.0L - reference_exp_mean(law, theta)) / theta);
}

inline double reference_mean(const std::map<double, double>& law) {
  double mean = 0.0;
  for (const auto& [x, p] : law) mean += x * p;
  return mean;
}

inline double reference_utility(const GameSpec& game, const std::vector<int>& a, int n,
                                UtilityKind kind) {
  const auto law = reference_law(game, a, n);
  const double theta = game.theta(n).value();
  switch (kind) {
    case UtilityKind::kEffectiveCapacity:
      return reference_ec(law, theta);
    case UtilityKind::kApproximated:
      return reference_approx(law, theta);
    case UtilityKind::kExpected:
      return reference_mean(law);
  }
  return 0.0;
}

// Odometer over all M^N profiles, first user fastest.
inline std::vector<std::vector<int>> all_profiles(int num_users, int num_channels) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(num_users, 0);
  while (true) {
    out.push_back(a);
    int i = 0;
    while (i < num_users && ++a[i] == num_channels) a[i++] = 0;
    if (i == num_users) break;
  }
  return out;
}

inline bool reference_is_nash(const GameSpec& game, const std::vector<int>& a, UtilityKind kind,
                              double tol = 1e-12) {
  for (int n = 0; n < game.num_users(); ++n) {
    const double current = reference_utility(game, a, n, kind);
    std::vector<int> b = a;
    for (int m = 0; m < game.num_channels(); ++m) {
      b[n] = m;
      if (reference_utility(game, b, n, kind) > current + tol) return false;
    }
  }
  return true;
}

// Rosenthal sum of approximated utilities: sum_m sum_{l<=c_m} u'_m(l).
inline double reference_approx_rosenthal(const GameSpec& game, const std::vector<int>& a) {
  double total = 0.0;
  const double theta = game.theta(0).value();
  for (int m = 0; m < game.num_channels(); ++m) {
    int c = 0;
    for (int k : a) c += k == m;
    for (int l = 1; l <= c; ++l) {
      std::vector<int> b(l, m);
      total += reference_approx(reference_law(game, b, 0), theta);
    }
  }
  return total;
}

// omega by summing over every pure profile of the other users.
inline double reference_omega(const GameSpec& game, int n, int m, const Matrix& P) {
  const int num_users = game.num_users();
  const int num_channels = game.num_channels();
  double total = 0.0;
  for (auto a : all_profiles(num_users, num_channels)) {
    if (a[n] != m) continue;
    double weight = 1.0;
    for (int k = 0; k < num_users; ++k) {
      if (k != n) weight *= P(k, a[k]);
    }
    total += weight * reference_utility(game, a, n, UtilityKind::kApproximated);
  }
  return total;
}

inline double reference_profile_weight(const Matrix& P, const std::vector<int>& a) {
  double weight = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) weight *= P(static_cast<int>(k), a[k]);
  return weight;
}

}  // namespace specgame::testing

#endif  // SPECGAME_TESTS_TEST_SUPPORT_H_
