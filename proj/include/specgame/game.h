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

#ifndef SPECGAME_GAME_H_
#define SPECGAME_GAME_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specgame/channel_model.h"
#include "specgame/effective_capacity.h"
#include "specgame/random.h"

namespace specgame {

// How c contenders on one channel share a slot.
enum class Contention {
  kFairShare,   // each contender receives rate / c
  kSlotWinner,  // one uniformly chosen contender receives the full rate
};

// Which per-user payoff a game-theoretic routine works with.
enum class UtilityKind {
  kEffectiveCapacity,  // -(1/theta) ln E[exp(-theta r)]
  kApproximated,       // (1 - E[exp(-theta r)]) / theta
  kExpected,           // E[r]
};

// Pure channel selection, one 0-based channel index per user. Printed
// 1-based ("2-1-3") in reports.
class ActionProfile {
 public:
  ActionProfile() = default;
  explicit ActionProfile(std::vector<int> channels) : channels_(std::move(channels)) {}

  std::size_t size() const { return channels_.size(); }
  int operator[](std::size_t n) const { return channels_[n]; }
  int& operator[](std::size_t n) { return channels_[n]; }
  const std::vector<int>& channels() const { return channels_; }

  std::string to_string() const;

  friend auto operator<=>(const ActionProfile&, const ActionProfile&) = default;

 private:
  std::vector<int> channels_;
};

// The channel selection game: users with QoS exponents, heterogeneous
// channels and a contention rule. Channel ids must be 1..M in order.
class GameSpec {
 public:
  GameSpec(std::vector<QosIndex> users, std::vector<ChannelSpec> channels,
           Contention contention = Contention::kFairShare);

  int num_users() const { return static_cast<int>(users_.size()); }
  int num_channels() const { return static_cast<int>(channels_.size()); }
  QosIndex theta(int n) const { return users_[n]; }
  const std::vector<QosIndex>& thetas() const { return users_; }
  const ChannelSpec& channel(int m) const { return channels_[m]; }
  const std::vector<ChannelSpec>& channels() const { return channels_; }
  Contention contention() const { return contention_; }
  // Largest rate over all channels.
  double max_rate() const;

  bool is_homogeneous() const;

  // Throws InvalidInput when the profile has the wrong length or an
  // out-of-range channel.
  void validate(const ActionProfile& profile) const;

  friend bool operator==(const GameSpec&, const GameSpec&) = default;

 private:
  std::vector<QosIndex> users_;
  std::vector<ChannelSpec> channels_;
  Contention contention_;
};

// Number of users on each channel.
std::vector<int> congestion_counts(const ActionProfile& profile, int num_channels);

// Rate law of one of `occupants` users on `channel`.
RateDistribution rate_distribution_on(const ChannelSpec& channel, int occupants,
                                      Contention contention);

RateDistribution user_rate_distribution(const GameSpec& game, const ActionProfile& profile,
                                        int n);

// Effective capacity of user n at the profile.
double utility(const GameSpec& game, const ActionProfile& profile, int n);

// Approximated utility (1 - E[exp(-theta r)]) / theta of user n.
double approx_utility(const GameSpec& game, const ActionProfile& profile, int n);

// Expected rate mean_rate(a_n) / c_{a_n}; the same under both contention rules.
double aux_expected_utility(const GameSpec& game, const ActionProfile& profile, int n);

// Rosenthal potential sum_m sum_{l=1}^{c_m} mean_rate(m) / l. Exact
// potential of the expected-rate game.
double rosenthal_potential(const GameSpec& game, const ActionProfile& profile);

// sum_m sum_{l=1}^{c_m} E[exp(-theta X_m(l))], where X_m(l) is the rate one of
// l contenders receives on channel m under the game's contention model.
double potential_v(const GameSpec& game, std::span<const int> counts, QosIndex theta);

// Ordinal potential -(1/theta) ln potential_v.
// Throws InvalidInput unless every user's theta equals theta_common.
double ordinal_potential(const GameSpec& game, const ActionProfile& profile,
                         QosIndex theta_common);

// (1 - potential_v) / theta: exact potential of the approximated-utility game
// with homogeneous theta. Same precondition.
double approx_potential(const GameSpec& game, const ActionProfile& profile,
                        QosIndex theta_common);

// u(n, m, c): utility of user n sitting on channel m with c users in total
// (itself included). Every routine that scans many profiles goes through it.
class UtilityTable {
 public:
  UtilityTable(const GameSpec& game, UtilityKind kind);

  int num_users() const { return num_users_; }
  int num_channels() const { return num_channels_; }
  double operator()(int n, int m, int occupants) const {
    return values_[(static_cast<std::size_t>(n) * num_channels_ + m) * num_users_ +
                   (occupants - 1)];
  }

 private:
  int num_users_;
  int num_channels_;
  std::vector<double> values_;
};

inline constexpr double kNashTolerance = 1e-12;

struct Deviation {
  int user;
  int channel;
  double gain;
};

struct NashCheck {
  bool is_nash;
  // First user (lowest index) with an improving move, and its best move.
  std::optional<Deviation> witness;
};

NashCheck is_nash(const UtilityTable& table, const ActionProfile& profile);
NashCheck is_nash(const GameSpec& game, const ActionProfile& profile,
                  UtilityKind kind = UtilityKind::kEffectiveCapacity);

// Number of pure profiles M^N, saturating at UINT64_MAX.
std::uint64_t profile_count(int num_users, int num_channels);

// Advances `profile` to its lexicographic successor; false after the last one.
bool next_profile(ActionProfile& profile, int num_channels);

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

// All pure Nash equilibria in lexicographic order. Throws InvalidInput when
// M^N exceeds `limit`.
std::vector<ActionProfile> enumerate_nash(const GameSpec& game,
                                          std::uint64_t limit = kDefaultEnumerationLimit,
                                          UtilityKind kind = UtilityKind::kEffectiveCapacity);

// Thrown by best_response_path when the round budget runs out.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, ActionProfile last)
      : std::runtime_error(what), last_profile_(std::move(last)) {}
  const ActionProfile& last_profile() const { return last_profile_; }

 private:
  ActionProfile last_profile_;
};

struct BestResponseResult {
  ActionProfile profile;
  int rounds;  // improving moves applied
};

// Asynchronous best-response dynamics: while some user can improve, a
// uniformly chosen improver switches to its best response (ties to the lowest
// channel). Terminates on homogeneous fair-share games by the finite
// improvement property.
BestResponseResult best_response_path(const GameSpec& game, ActionProfile start, Rng& rng,
                                      int max_rounds,
                                      UtilityKind kind = UtilityKind::kEffectiveCapacity);

struct PotentialReport {
  long long deviations_checked = 0;
  // max |delta expected utility - delta Rosenthal potential|
  double exact_max_discrepancy = 0.0;
  // Ordinal part only runs for homogeneous theta.
  bool ordinal_checked = false;
  // Deviations where sign(delta u) != sign(delta ordinal potential), with
  // |delta| <= 1e-12 counted as zero.
  long long sign_disagreements = 0;
  // Subset of the above where exactly one of the two deltas is zero.
  long long zero_mismatches = 0;
};

// Checks the exact-potential identity of the expected-rate game and the sign
// law of the ordinal potential over unilateral deviations. num_checks == 0
// scans every (profile, user, channel) triple; otherwise that many random
// triples are drawn. The utility deltas use the game's own contention rule
// while the ordinal potential is the fair-share closed form, so slot-winner
// reports are exploratory.
PotentialReport verify_potentials(const GameSpec& game, Rng& rng, long long num_checks = 0);

}  // namespace specgame

#endif  // SPECGAME_GAME_H_
