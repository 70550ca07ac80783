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

#include "specgame/game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specgame/errors.h"

namespace specgame {
namespace {

// A deviating user n moves from profile[n] to m; returns the new counts.
std::vector<int> counts_after_move(std::vector<int> counts, int from, int to) {
  --counts[from];
  ++counts[to];
  return counts;
}

double potential_u_from_counts(const GameSpec& game, std::span<const int> counts,
                               QosIndex theta) {
  return -std::log(potential_v(game, counts, theta)) / theta.value();
}

int sign_with_zero(double x) {
  if (std::abs(x) <= kNashTolerance) return 0;
  return x > 0.0 ? 1 : -1;
}

void require_common_theta(const GameSpec& game, QosIndex theta_common) {
  for (int n = 0; n < game.num_users(); ++n) {
    if (!(game.theta(n) == theta_common)) {
      throw InvalidInput("the closed-form potential needs every user to share theta = " +
                         std::to_string(theta_common.value()) + "; user " +
                         std::to_string(n + 1) + " has " +
                         std::to_string(game.theta(n).value()));
    }
  }
}

}  // namespace

std::string ActionProfile::to_string() const {
  std::string out;
  for (std::size_t n = 0; n < channels_.size(); ++n) {
    if (n > 0) out += '-';
    out += std::to_string(channels_[n] + 1);
  }
  return out;
}

GameSpec::GameSpec(std::vector<QosIndex> users, std::vector<ChannelSpec> channels,
                   Contention contention)
    : users_(std::move(users)), channels_(std::move(channels)), contention_(contention) {
  if (users_.empty()) throw InvalidInput("a game needs at least one user");
  if (channels_.empty()) throw InvalidInput("a game needs at least one channel");
  for (std::size_t m = 0; m < channels_.size(); ++m) {
    if (channels_[m].id() != static_cast<int>(m) + 1) {
      throw InvalidInput("channel ids must be 1..M in order; position " +
                         std::to_string(m + 1) + " has id " +
                         std::to_string(channels_[m].id()));
    }
  }
}

double GameSpec::max_rate() const {
  double r = 0.0;
  for (const auto& ch : channels_) r = std::max(r, ch.max_rate());
  return r;
}

bool GameSpec::is_homogeneous() const {
  return std::all_of(users_.begin(), users_.end(),
                     [this](QosIndex t) { return t == users_.front(); });
}

void GameSpec::validate(const ActionProfile& profile) const {
  if (static_cast<int>(profile.size()) != num_users()) {
    throw InvalidInput("profile has " + std::to_string(profile.size()) + " entries for " +
                       std::to_string(num_users()) + " users");
  }
  for (std::size_t n = 0; n < profile.size(); ++n) {
    if (profile[n] < 0 || profile[n] >= num_channels()) {
      throw InvalidInput("user " + std::to_string(n + 1) + " selects unknown channel " +
                         std::to_string(profile[n] + 1));
    }
  }
}

std::vector<int> congestion_counts(const ActionProfile& profile, int num_channels) {
  std::vector<int> counts(num_channels, 0);
  for (int a : profile.channels()) ++counts[a];
  return counts;
}

RateDistribution rate_distribution_on(const ChannelSpec& channel, int occupants,
                                      Contention contention) {
  if (occupants < 1) throw InvalidInput("a user's channel has at least one occupant");
  const double c = occupants;
  if (occupants == 1) return RateDistribution(channel.rates(), channel.probs());
  if (contention == Contention::kFairShare) {
    std::vector<double> values(channel.rates());
    for (double& v : values) v /= c;
    return RateDistribution(std::move(values), channel.probs());
  }
  // Slot winner: the full rate with probability pi_k / c, nothing otherwise.
  std::vector<double> values;
  std::vector<double> probs;
  const double lose = 1.0 - 1.0 / c;
  if (channel.rates().front() != 0.0) {
    values.push_back(0.0);
    probs.push_back(lose);
  }
  for (std::size_t k = 0; k < channel.num_states(); ++k) {
    values.push_back(channel.rates()[k]);
    probs.push_back(channel.probs()[k] / c + (channel.rates()[k] == 0.0 ? lose : 0.0));
  }
  return RateDistribution(std::move(values), std::move(probs));
}

RateDistribution user_rate_distribution(const GameSpec& game, const ActionProfile& profile,
                                        int n) {
  game.validate(profile);
  const auto counts = congestion_counts(profile, game.num_channels());
  const int m = profile[n];
  return rate_distribution_on(game.channel(m), counts[m], game.contention());
}

double utility(const GameSpec& game, const ActionProfile& profile, int n) {
  return effective_capacity(user_rate_distribution(game, profile, n), game.theta(n));
}

double approx_utility(const GameSpec& game, const ActionProfile& profile, int n) {
  return approx_utility(user_rate_distribution(game, profile, n), game.theta(n));
}

double aux_expected_utility(const GameSpec& game, const ActionProfile& profile, int n) {
  game.validate(profile);
  const auto counts = congestion_counts(profile, game.num_channels());
  const int m = profile[n];
  return mean_rate(game.channel(m)) / counts[m];
}

double rosenthal_potential(const GameSpec& game, const ActionProfile& profile) {
  game.validate(profile);
  const auto counts = congestion_counts(profile, game.num_channels());
  double phi = 0.0;
  for (int m = 0; m < game.num_channels(); ++m) {
    const double mean = mean_rate(game.channel(m));
    for (int l = 1; l <= counts[m]; ++l) phi += mean / l;
  }
  return phi;
}

double potential_v(const GameSpec& game, std::span<const int> counts, QosIndex theta) {
  double phi = 0.0;
  for (int m = 0; m < game.num_channels(); ++m) {
    const auto& ch = game.channel(m);
    for (int l = 1; l <= counts[m]; ++l) {
      const RateDistribution law = rate_distribution_on(ch, l, game.contention());
      for (std::size_t k = 0; k < law.values().size(); ++k) {
        phi += law.probs()[k] * std::exp(-theta.value() * law.values()[k]);
      }
    }
  }
  return phi;
}

double ordinal_potential(const GameSpec& game, const ActionProfile& profile,
                         QosIndex theta_common) {
  require_common_theta(game, theta_common);
  game.validate(profile);
  return potential_u_from_counts(game, congestion_counts(profile, game.num_channels()),
                                 theta_common);
}

double approx_potential(const GameSpec& game, const ActionProfile& profile,
                        QosIndex theta_common) {
  require_common_theta(game, theta_common);
  game.validate(profile);
  const auto counts = congestion_counts(profile, game.num_channels());
  return (1.0 - potential_v(game, counts, theta_common)) / theta_common.value();
}

UtilityTable::UtilityTable(const GameSpec& game, UtilityKind kind)
    : num_users_(game.num_users()),
      num_channels_(game.num_channels()),
      values_(static_cast<std::size_t>(num_users_) * num_channels_ * num_users_) {
  for (int m = 0; m < num_channels_; ++m) {
    const double mean = mean_rate(game.channel(m));
    for (int c = 1; c <= num_users_; ++c) {
      const RateDistribution dist = rate_distribution_on(game.channel(m), c, game.contention());
      for (int n = 0; n < num_users_; ++n) {
        double u = 0.0;
        switch (kind) {
          case UtilityKind::kEffectiveCapacity:
            u = effective_capacity(dist, game.theta(n));
            break;
          case UtilityKind::kApproximated:
            u = approx_utility(dist, game.theta(n));
            break;
          case UtilityKind::kExpected:
            u = mean / c;
            break;
        }
        values_[(static_cast<std::size_t>(n) * num_channels_ + m) * num_users_ + (c - 1)] = u;
      }
    }
  }
}

NashCheck is_nash(const UtilityTable& table, const ActionProfile& profile) {
  const auto counts = congestion_counts(profile, table.num_channels());
  for (int n = 0; n < table.num_users(); ++n) {
    const int a = profile[n];
    const double current = table(n, a, counts[a]);
    std::optional<Deviation> best;
    for (int m = 0; m < table.num_channels(); ++m) {
      if (m == a) continue;
      const double gain = table(n, m, counts[m] + 1) - current;
      if (gain > kNashTolerance && (!best || gain > best->gain)) best = Deviation{n, m, gain};
    }
    if (best) return {false, best};
  }
  return {true, std::nullopt};
}

NashCheck is_nash(const GameSpec& game, const ActionProfile& profile, UtilityKind kind) {
  game.validate(profile);
  return is_nash(UtilityTable(game, kind), profile);
}

std::uint64_t profile_count(int num_users, int num_channels) {
  std::uint64_t total = 1;
  for (int n = 0; n < num_users; ++n) {
    if (total > std::numeric_limits<std::uint64_t>::max() / num_channels) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= static_cast<std::uint64_t>(num_channels);
  }
  return total;
}

bool next_profile(ActionProfile& profile, int num_channels) {
  for (std::size_t i = profile.size(); i-- > 0;) {
    if (++profile[i] < num_channels) return true;
    profile[i] = 0;
  }
  return false;
}

std::vector<ActionProfile> enumerate_nash(const GameSpec& game, std::uint64_t limit,
                                          UtilityKind kind) {
  const std::uint64_t total = profile_count(game.num_users(), game.num_channels());
  if (total > limit) {
    throw InvalidInput("exhaustive search over " + std::to_string(game.num_channels()) + "^" +
                       std::to_string(game.num_users()) + " profiles exceeds the limit of " +
                       std::to_string(limit) + "; use best_response_path or learning instead");
  }
  const UtilityTable table(game, kind);
  std::vector<ActionProfile> equilibria;
  ActionProfile profile(std::vector<int>(game.num_users(), 0));
  do {
    if (is_nash(table, profile).is_nash) equilibria.push_back(profile);
  } while (next_profile(profile, game.num_channels()));
  return equilibria;
}

BestResponseResult best_response_path(const GameSpec& game, ActionProfile start, Rng& rng,
                                      int max_rounds, UtilityKind kind) {
  game.validate(start);
  const UtilityTable table(game, kind);
  const int num_users = game.num_users();
  const int num_channels = game.num_channels();
  ActionProfile profile = std::move(start);
  auto counts = congestion_counts(profile, num_channels);

  // Best response of user n given the others; -1 when it cannot improve.
  auto best_response = [&](int n) {
    const int a = profile[n];
    const double current = table(n, a, counts[a]);
    int best = -1;
    double best_value = current;
    for (int m = 0; m < num_channels; ++m) {
      if (m == a) continue;
      const double v = table(n, m, counts[m] + 1);
      if (v - current > kNashTolerance && v > best_value) {
        best = m;
        best_value = v;
      }
    }
    return best;
  };

  for (int rounds = 0;; ++rounds) {
    std::vector<std::pair<int, int>> improvers;
    for (int n = 0; n < num_users; ++n) {
      const int br = best_response(n);
      if (br >= 0) improvers.emplace_back(n, br);
    }
    if (improvers.empty()) return {profile, rounds};
    if (rounds >= max_rounds) {
      throw NoConvergence("best-response dynamics did not settle within " +
                              std::to_string(max_rounds) + " rounds",
                          profile);
    }
    const auto [n, m] = improvers[uniform_index(rng, improvers.size())];
    --counts[profile[n]];
    ++counts[m];
    profile[n] = m;
  }
}

PotentialReport verify_potentials(const GameSpec& game, Rng& rng, long long num_checks) {
  const int num_users = game.num_users();
  const int num_channels = game.num_channels();
  const UtilityTable expected(game, UtilityKind::kExpected);
  const UtilityTable real(game, UtilityKind::kEffectiveCapacity);
  const bool homogeneous = game.is_homogeneous();
  const QosIndex theta = game.theta(0);

  std::vector<double> mean(num_channels);
  for (int m = 0; m < num_channels; ++m) mean[m] = mean_rate(game.channel(m));
  auto rosenthal = [&](std::span<const int> counts) {
    double phi = 0.0;
    for (int m = 0; m < num_channels; ++m) {
      for (int l = 1; l <= counts[m]; ++l) phi += mean[m] / l;
    }
    return phi;
  };

  PotentialReport report;
  report.ordinal_checked = homogeneous;

  auto check = [&](const ActionProfile& profile, const std::vector<int>& counts, int n,
                   int target) {
    ++report.deviations_checked;
    const int a = profile[n];
    if (target == a) return;  // no-op move: every delta is exactly zero
    const auto moved = counts_after_move(counts, a, target);
    const double d_aux = expected(n, target, moved[target]) - expected(n, a, counts[a]);
    const double d_rosenthal = rosenthal(moved) - rosenthal(counts);
    report.exact_max_discrepancy =
        std::max(report.exact_max_discrepancy, std::abs(d_aux - d_rosenthal));
    if (!homogeneous) return;
    const double d_u = real(n, target, moved[target]) - real(n, a, counts[a]);
    const double d_phi =
        potential_u_from_counts(game, moved, theta) - potential_u_from_counts(game, counts, theta);
    const int s_u = sign_with_zero(d_u);
    const int s_phi = sign_with_zero(d_phi);
    if (s_u != s_phi) {
      ++report.sign_disagreements;
      if (s_u == 0 || s_phi == 0) ++report.zero_mismatches;
    }
  };

  if (num_checks == 0) {
    ActionProfile profile(std::vector<int>(num_users, 0));
    do {
      const auto counts = congestion_counts(profile, num_channels);
      for (int n = 0; n < num_users; ++n) {
        for (int m = 0; m < num_channels; ++m) check(profile, counts, n, m);
      }
    } while (next_profile(profile, num_channels));
  } else {
    ActionProfile profile(std::vector<int>(num_users, 0));
    for (long long i = 0; i < num_checks; ++i) {
      for (int n = 0; n < num_users; ++n) {
        profile[n] = static_cast<int>(uniform_index(rng, num_channels));
      }
      const int n = static_cast<int>(uniform_index(rng, num_users));
      const int m = static_cast<int>(uniform_index(rng, num_channels));
      check(profile, congestion_counts(profile, num_channels), n, m);
    }
  }
  return report;
}

}  // namespace specgame
