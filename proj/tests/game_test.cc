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
#include <set>
#include <vector>

#include "doctest.h"
#include "specgame/errors.h"
#include "test_support.h"

namespace specgame {
namespace {

const ChannelSpec kCoin(1, {0.0, 2.0}, {0.5, 0.5});

GameSpec coin_game(int users, int channels, Contention contention = Contention::kFairShare,
                   double theta = 1.0) {
  std::vector<ChannelSpec> specs;
  for (int m = 0; m < channels; ++m) specs.emplace_back(m + 1, kCoin.rates(), kCoin.probs());
  return GameSpec(std::vector<QosIndex>(users, QosIndex(theta)), specs, contention);
}

ActionProfile profile_of(std::vector<int> one_based) {
  for (int& a : one_based) --a;
  return ActionProfile(std::move(one_based));
}

TEST_CASE("game spec validation") {
  CHECK_THROWS_AS(GameSpec({}, {kCoin}), InvalidInput);
  CHECK_THROWS_AS(GameSpec({QosIndex(1.0)}, {}), InvalidInput);
  CHECK_THROWS_AS(GameSpec({QosIndex(1.0)}, {ChannelSpec(2, {1}, {1})}), InvalidInput);
  const GameSpec game = coin_game(2, 2);
  CHECK_THROWS_AS(game.validate(ActionProfile({0})), InvalidInput);
  CHECK_THROWS_AS(game.validate(ActionProfile({0, 2})), InvalidInput);
  CHECK_THROWS_AS(game.validate(ActionProfile({-1, 0})), InvalidInput);
  CHECK_NOTHROW(game.validate(ActionProfile({1, 0})));
  CHECK(profile_of({1, 2, 2}).to_string() == "1-2-2");
}

TEST_CASE("congestion counts") {
  CHECK(congestion_counts(profile_of({1, 1, 2}), 2) == std::vector<int>{2, 1});
  CHECK(congestion_counts(profile_of({1, 1, 1, 1}), 3) == std::vector<int>{4, 0, 0});
  CHECK(congestion_counts(profile_of({1, 2, 3}), 3) == std::vector<int>{1, 1, 1});
}

TEST_CASE("user rate distribution under both contention models") {
  for (Contention c : {Contention::kFairShare, Contention::kSlotWinner}) {
    const auto alone = user_rate_distribution(coin_game(2, 2, c), profile_of({1, 2}), 0);
    CHECK(alone.values() == kCoin.rates());
    CHECK(alone.probs() == kCoin.probs());
  }
  const auto fair = user_rate_distribution(coin_game(2, 1), profile_of({1, 1}), 0);
  CHECK(fair.values() == std::vector<double>{0.0, 1.0});
  CHECK(fair.probs() == std::vector<double>{0.5, 0.5});

  const auto slot =
      user_rate_distribution(coin_game(2, 1, Contention::kSlotWinner), profile_of({1, 1}), 0);
  REQUIRE(slot.values() == std::vector<double>{0.0, 2.0});
  CHECK(slot.probs()[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(slot.probs()[1] == doctest::Approx(0.25).epsilon(1e-15));

  // No zero-rate state on the channel: a zero state is added.
  const GameSpec no_zero({QosIndex(1.0), QosIndex(1.0), QosIndex(1.0)},
                         {ChannelSpec(1, {1.0, 3.0}, {0.25, 0.75})}, Contention::kSlotWinner);
  const auto three = user_rate_distribution(no_zero, profile_of({1, 1, 1}), 2);
  REQUIRE(three.values() == std::vector<double>{0.0, 1.0, 3.0});
  CHECK(three.probs()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(three.probs()[1] == doctest::Approx(0.25 / 3.0).epsilon(1e-15));
  CHECK(three.probs()[2] == doctest::Approx(0.75 / 3.0).epsilon(1e-15));
}

TEST_CASE("user rate distribution matches the reference law") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    testing::InstanceShape shape;
    shape.contention = i % 2 ? Contention::kSlotWinner : Contention::kFairShare;
    shape.continuous_rates = i % 3 == 0;
    const GameSpec game = testing::random_heterogeneous_game(rng, shape);
    std::vector<int> a;
    for (int n = 0; n < game.num_users(); ++n) a.push_back(static_cast<int>(uniform_index(rng, game.num_channels())));
    const ActionProfile profile(a);
    for (int n = 0; n < game.num_users(); ++n) {
      const auto law = testing::reference_law(game, a, n);
      const auto dist = user_rate_distribution(game, profile, n);
      std::map<double, double> got;
      for (std::size_t k = 0; k < dist.values().size(); ++k) got[dist.values()[k]] += dist.probs()[k];
      for (const auto& [x, p] : law) CHECK(got[x] == doctest::Approx(p).epsilon(1e-12));
      for (const auto& [x, p] : got) CHECK(law.count(x) + (p == 0.0) >= 1);
      // Both readings keep the mean at mean_rate / c.
      int c = 0;
      for (int k : a) c += k == a[n];
      CHECK(dist.mean() == doctest::Approx(mean_rate(game.channel(a[n])) / c).epsilon(1e-12));
      for (UtilityKind kind :
           {UtilityKind::kEffectiveCapacity, UtilityKind::kApproximated, UtilityKind::kExpected}) {
        const double lib = kind == UtilityKind::kEffectiveCapacity ? utility(game, profile, n)
                           : kind == UtilityKind::kApproximated    ? approx_utility(game, profile, n)
                                                                   : aux_expected_utility(game, profile, n);
        CHECK(lib == doctest::Approx(testing::reference_utility(game, a, n, kind)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("utility examples") {
  CHECK(utility(coin_game(1, 1), profile_of({1}), 0) == doctest::Approx(0.566219).epsilon(1e-6));
  CHECK(utility(coin_game(2, 1), profile_of({1, 1}), 0) == doctest::Approx(0.379885).epsilon(1e-6));
  CHECK(utility(coin_game(2, 1), profile_of({1, 1}), 1) ==
        doctest::Approx(-std::log(0.5 * (1.0 + std::exp(-1.0)))).epsilon(1e-14));
  const GameSpec small = coin_game(3, 2, Contention::kFairShare, 1e-6);
  for (int n = 0; n < 3; ++n) {
    const ActionProfile a = profile_of({1, 1, 2});
    const int c = n < 2 ? 2 : 1;
    CHECK(std::abs(utility(small, a, n) - 1.0 / c) <= 1e-5);
  }
}

TEST_CASE("expected utility examples") {
  const ChannelSpec five_db(1, {0, 1, 2, 3, 6}, {0.3376, 0.2348, 0.2517, 0.1757, 0.0002});
  const GameSpec game({QosIndex(0.01), QosIndex(0.01)}, {five_db});
  CHECK(aux_expected_utility(game, profile_of({1, 1}), 0) ==
        doctest::Approx(mean_rate(five_db) / 2.0).epsilon(1e-15));
  const GameSpec single({QosIndex(0.01)}, {five_db});
  CHECK(aux_expected_utility(single, profile_of({1}), 0) == doctest::Approx(1.2665).epsilon(1e-12));
  const GameSpec zero({QosIndex(1.0)}, {ChannelSpec(1, {0.0}, {1.0})});
  CHECK(aux_expected_utility(zero, profile_of({1}), 0) == 0.0);
  CHECK(utility(zero, profile_of({1}), 0) == 0.0);
}

TEST_CASE("rosenthal potential examples") {
  const GameSpec two({QosIndex(1.0), QosIndex(1.0)},
                     {ChannelSpec(1, {1.0}, {1.0}), ChannelSpec(2, {2.0}, {1.0})});
  CHECK(rosenthal_potential(two, profile_of({2, 2})) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(rosenthal_potential(two, profile_of({1, 2})) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(rosenthal_potential(two, profile_of({1, 1})) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("ordinal potential examples") {
  const double s = 2.5;
  const GameSpec one({QosIndex(1.0), QosIndex(1.0)}, {ChannelSpec(1, {s}, {1.0})});
  const double phi_v = std::exp(-s) + std::exp(-s / 2.0);
  const std::vector<int> counts = {2};
  CHECK(potential_v(one, counts, QosIndex(1.0)) == doctest::Approx(phi_v).epsilon(1e-15));
  CHECK(ordinal_potential(one, profile_of({1, 1}), QosIndex(1.0)) ==
        doctest::Approx(-std::log(phi_v)).epsilon(1e-14));

  Rng rng(40);
  testing::InstanceShape shape;
  for (int i = 0; i < 100; ++i) {
    const GameSpec game = testing::random_homogeneous_game(rng, shape);
    const QosIndex theta = game.theta(0);
    std::vector<int> a;
    for (int n = 0; n < game.num_users(); ++n) a.push_back(static_cast<int>(uniform_index(rng, game.num_channels())));
    std::vector<int> shuffled = a;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(ordinal_potential(game, ActionProfile(a), theta) ==
          doctest::Approx(ordinal_potential(game, ActionProfile(shuffled), theta)).epsilon(1e-14));

    // A user joining an empty channel adds its single-occupant term.
    auto counts_a = congestion_counts(ActionProfile(a), game.num_channels());
    for (int m = 0; m < game.num_channels(); ++m) {
      if (counts_a[m] != 0) continue;
      auto more = counts_a;
      more[m] = 1;
      double term = 0.0;
      const ChannelSpec& ch = game.channel(m);
      for (std::size_t k = 0; k < ch.num_states(); ++k) term += ch.probs()[k] * std::exp(-theta.value() * ch.rates()[k]);
      CHECK(potential_v(game, more, theta) - potential_v(game, counts_a, theta) ==
            doctest::Approx(term).epsilon(1e-12));
    }
  }
}

TEST_CASE("potentials refuse heterogeneous qos indices") {
  const GameSpec game({QosIndex(1.0), QosIndex(0.5)}, {kCoin});
  CHECK_THROWS_AS(ordinal_potential(game, profile_of({1, 1}), QosIndex(1.0)), InvalidInput);
  CHECK_THROWS_AS(approx_potential(game, profile_of({1, 1}), QosIndex(1.0)), InvalidInput);
  const GameSpec same = coin_game(2, 1, Contention::kFairShare, 0.5);
  CHECK_THROWS_AS(ordinal_potential(same, profile_of({1, 1}), QosIndex(1.0)), InvalidInput);
}

TEST_CASE("approximated potential is exact for the approximated game") {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    testing::InstanceShape shape;
    shape.contention = i % 2 ? Contention::kSlotWinner : Contention::kFairShare;
    const GameSpec game = testing::random_homogeneous_game(rng, shape);
    const QosIndex theta = game.theta(0);
    const double offset = (game.num_users() - 1) / theta.value();
    for (const auto& a : testing::all_profiles(game.num_users(), game.num_channels())) {
      const ActionProfile profile(a);
      CHECK(approx_potential(game, profile, theta) + offset ==
            doctest::Approx(testing::reference_approx_rosenthal(game, a)).epsilon(1e-10));
    }
  }
}

TEST_CASE("utility table matches direct evaluation") {
  Rng rng(42);
  testing::InstanceShape shape;
  shape.contention = Contention::kSlotWinner;
  const GameSpec game = testing::random_heterogeneous_game(rng, shape);
  const UtilityTable table(game, UtilityKind::kEffectiveCapacity);
  for (const auto& a : testing::all_profiles(game.num_users(), game.num_channels())) {
    const auto counts = congestion_counts(ActionProfile(a), game.num_channels());
    for (int n = 0; n < game.num_users(); ++n) {
      CHECK(table(n, a[n], counts[a[n]]) == utility(game, ActionProfile(a), n));
    }
  }
}

TEST_CASE("nash check examples") {
  const GameSpec single({QosIndex(0.1)},
                        {ChannelSpec(1, {1.0}, {1.0}), ChannelSpec(2, {0.0, 4.0}, {0.5, 0.5})});
  const bool second_better = utility(single, profile_of({2}), 0) > utility(single, profile_of({1}), 0);
  CHECK(is_nash(single, profile_of({second_better ? 2 : 1})).is_nash);
  CHECK_FALSE(is_nash(single, profile_of({second_better ? 1 : 2})).is_nash);

  const GameSpec game = coin_game(2, 2);
  CHECK(is_nash(game, profile_of({1, 2})).is_nash);
  CHECK_FALSE(is_nash(game, profile_of({1, 2})).witness);
  const NashCheck crowded = is_nash(game, profile_of({1, 1}));
  CHECK_FALSE(crowded.is_nash);
  REQUIRE(crowded.witness);
  CHECK(crowded.witness->channel == 1);
  CHECK(crowded.witness->gain > 0.0);
}

TEST_CASE("nash enumeration examples") {
  const auto two = enumerate_nash(coin_game(2, 2));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == profile_of({1, 2}));
  CHECK(two[1] == profile_of({2, 1}));

  const GameSpec single({QosIndex(1.0)}, {kCoin, ChannelSpec(2, {0.5}, {1.0}),
                                          ChannelSpec(3, kCoin.rates(), kCoin.probs())});
  const auto argmax = enumerate_nash(single);
  REQUIRE(argmax.size() == 2);
  CHECK(argmax[0] == profile_of({1}));
  CHECK(argmax[1] == profile_of({3}));

  CHECK_THROWS_AS(enumerate_nash(coin_game(10, 4), 1000), InvalidInput);
  CHECK(profile_count(10, 4) == 1048576u);
}

TEST_CASE("nash enumeration matches brute force") {
  Rng rng(43);
  for (int i = 0; i < 150; ++i) {
    testing::InstanceShape shape;
    shape.max_users = 4;
    shape.max_channels = 3;
    shape.contention = i % 2 ? Contention::kSlotWinner : Contention::kFairShare;
    const bool homogeneous = i % 3 != 0;
    const GameSpec game = homogeneous ? testing::random_homogeneous_game(rng, shape)
                                      : testing::random_heterogeneous_game(rng, shape);
    for (UtilityKind kind : {UtilityKind::kEffectiveCapacity, UtilityKind::kApproximated}) {
      std::vector<ActionProfile> expected;
      for (const auto& a : testing::all_profiles(game.num_users(), game.num_channels())) {
        if (testing::reference_is_nash(game, a, kind, 1e-12)) expected.emplace_back(a);
      }
      std::sort(expected.begin(), expected.end());
      CHECK(enumerate_nash(game, kDefaultEnumerationLimit, kind) == expected);
      if (homogeneous) CHECK_FALSE(expected.empty());
    }
  }
}

TEST_CASE("the two utility games share their equilibria") {
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    testing::InstanceShape shape;
    shape.continuous_rates = true;
    const GameSpec game = testing::random_heterogeneous_game(rng, shape);
    CHECK(enumerate_nash(game) == enumerate_nash(game, kDefaultEnumerationLimit, UtilityKind::kApproximated));
  }
}

TEST_CASE("lexicographic profile iteration") {
  ActionProfile a(std::vector<int>(3, 0));
  std::vector<ActionProfile> seen;
  do seen.push_back(a);
  while (next_profile(a, 2));
  CHECK(seen.size() == 8);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  CHECK(seen.back() == profile_of({2, 2, 2}));
}

TEST_CASE("best response path examples") {
  const GameSpec game = coin_game(2, 2);
  Rng rng(1);
  const auto fixed = best_response_path(game, profile_of({2, 1}), rng, 10);
  CHECK(fixed.rounds == 0);
  CHECK(fixed.profile == profile_of({2, 1}));
  const auto moved = best_response_path(game, profile_of({1, 1}), rng, 10);
  CHECK(moved.rounds == 1);
  CHECK((moved.profile == profile_of({1, 2}) || moved.profile == profile_of({2, 1})));
}

TEST_CASE("best response path ends at a nash equilibrium") {
  Rng rng(45);
  for (int i = 0; i < 150; ++i) {
    testing::InstanceShape shape;
    shape.contention = i % 2 ? Contention::kSlotWinner : Contention::kFairShare;
    const GameSpec game = testing::random_homogeneous_game(rng, shape);
    std::vector<int> start;
    for (int n = 0; n < game.num_users(); ++n) start.push_back(static_cast<int>(uniform_index(rng, game.num_channels())));
    const auto result = best_response_path(game, ActionProfile(start), rng,
                                           50 * game.num_users() * game.num_channels());
    CHECK(testing::reference_is_nash(game, result.profile.channels(), UtilityKind::kEffectiveCapacity));
    const auto all = enumerate_nash(game);
    CHECK(std::find(all.begin(), all.end(), result.profile) != all.end());
  }
}

TEST_CASE("best response path reports exhaustion with the last profile") {
  const GameSpec game = coin_game(3, 3);
  Rng rng(2);
  try {
    best_response_path(game, profile_of({1, 1, 1}), rng, 1);
    FAIL("expected exhaustion");
  } catch (const NoConvergence& e) {
    CHECK(e.last_profile().size() == 3);
    CHECK_FALSE(e.last_profile() == profile_of({1, 1, 1}));
  }
}

TEST_CASE("potential verification") {
  Rng rng(46);
  for (int i = 0; i < 60; ++i) {
    testing::InstanceShape shape;
    shape.contention = i % 2 ? Contention::kSlotWinner : Contention::kFairShare;
    const GameSpec game = i % 3 != 0 ? testing::random_homogeneous_game(rng, shape)
                                     : testing::random_heterogeneous_game(rng, shape);
    const bool homogeneous = game.is_homogeneous();
    const PotentialReport full = verify_potentials(game, rng, 0);
    CHECK(full.deviations_checked ==
          static_cast<long long>(profile_count(game.num_users(), game.num_channels())) *
              game.num_users() * game.num_channels());
    CHECK(full.exact_max_discrepancy <= 1e-9);
    CHECK(full.ordinal_checked == homogeneous);
    CHECK(full.sign_disagreements == 0);
    const PotentialReport sampled = verify_potentials(game, rng, 500);
    CHECK(sampled.deviations_checked == 500);
    CHECK(sampled.exact_max_discrepancy <= 1e-9);
    CHECK(sampled.sign_disagreements == 0);
  }
}

TEST_CASE("potential maximisers are equilibria") {
  Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const GameSpec game = testing::random_homogeneous_game(rng, testing::InstanceShape{});
    double best = -INFINITY;
    for (const auto& a : testing::all_profiles(game.num_users(), game.num_channels())) {
      best = std::max(best, ordinal_potential(game, ActionProfile(a), game.theta(0)));
    }
    for (const auto& a : testing::all_profiles(game.num_users(), game.num_channels())) {
      if (ordinal_potential(game, ActionProfile(a), game.theta(0)) == best) {
        CHECK(is_nash(game, ActionProfile(a)).is_nash);
      }
    }
  }
}

TEST_CASE("utilities are anonymous") {
  Rng rng(48);
  for (int i = 0; i < 100; ++i) {
    const GameSpec game = testing::random_homogeneous_game(rng, testing::InstanceShape{});
    std::vector<int> a;
    for (int n = 0; n < game.num_users(); ++n) a.push_back(static_cast<int>(uniform_index(rng, game.num_channels())));
    std::vector<int> b = a;
    std::rotate(b.begin(), b.begin() + 1, b.end());
    std::multiset<double> ua;
    std::multiset<double> ub;
    for (int n = 0; n < game.num_users(); ++n) {
      ua.insert(utility(game, ActionProfile(a), n));
      ub.insert(utility(game, ActionProfile(b), n));
    }
    CHECK(ua == ub);
  }
}

}  // namespace
}  // namespace specgame
