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


#include "specgame/effective_capacity.h"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "specgame/errors.h"
#include "specgame/random.h"
#include "test_support.h"

namespace specgame {
namespace {

const RateDistribution kCoin({0.0, 2.0}, {0.5, 0.5});

// Direct evaluation without any shifting.
double direct_ec(const RateDistribution& d, double theta) {
  long double e = 0.0L;
  for (std::size_t j = 0; j < d.values().size(); ++j) {
    e += d.probs()[j] * std::exp(-static_cast<long double>(theta) * d.values()[j]);
  }
  return static_cast<double>(-std::log(e) / theta);
}

RateDistribution random_distribution(Rng& rng, bool allow_degenerate) {
  const int k = allow_degenerate ? testing::uniform_int(rng, 1, 6) : testing::uniform_int(rng, 2, 6);
  std::vector<double> values;
  for (int i = 0; i < k; ++i) values.push_back(6.0 * uniform01(rng));
  std::sort(values.begin(), values.end());
  return RateDistribution(values, testing::random_probs(rng, k));
}

TEST_CASE("qos index must be positive and finite") {
  CHECK_THROWS_AS(QosIndex{0.0}, InvalidInput);
  CHECK_THROWS_AS(QosIndex{-1.0}, InvalidInput);
  CHECK_THROWS_AS(QosIndex{NAN}, InvalidInput);
  CHECK_THROWS_AS(QosIndex{INFINITY}, InvalidInput);
  CHECK(QosIndex(0.5).value() == 0.5);
}

TEST_CASE("rate distribution invariants") {
  CHECK_THROWS_AS(RateDistribution({}, {}), InvalidInput);
  CHECK_THROWS_AS(RateDistribution({1.0}, {0.5}), InvalidInput);
  CHECK_THROWS_AS(RateDistribution({1.0, 2.0}, {1.0}), InvalidInput);
  CHECK_THROWS_AS(RateDistribution({-1.0}, {1.0}), InvalidInput);
  CHECK_THROWS_AS(RateDistribution({1.0, 2.0}, {1.2, -0.2}), InvalidInput);
  CHECK(kCoin.mean() == 1.0);
  CHECK(kCoin.variance() == 1.0);
  CHECK_FALSE(kCoin.is_degenerate());
  CHECK(RateDistribution({1.0, 4.0}, {0.0, 1.0}).is_degenerate());
  CHECK(RateDistribution({1.0, 4.0}, {0.0, 1.0}).min_support() == 4.0);
}

TEST_CASE("effective capacity examples") {
  CHECK(effective_capacity(RateDistribution::constant(3.0), QosIndex(0.7)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(effective_capacity(kCoin, QosIndex(1.0)) == doctest::Approx(0.566219).epsilon(1e-6));
  CHECK(effective_capacity(kCoin, QosIndex(1.0)) ==
        doctest::Approx(-std::log(0.5 * (1.0 + std::exp(-2.0)))).epsilon(1e-14));
  CHECK(std::abs(effective_capacity(kCoin, QosIndex(1e-6)) - 1.0) <= 1e-6);
}

TEST_CASE("effective capacity agrees with direct evaluation") {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const auto d = random_distribution(rng, true);
    for (double theta : {1e-4, 1e-2, 0.3, 1.0, 3.0}) {
      CHECK(effective_capacity(d, QosIndex(theta)) == doctest::Approx(direct_ec(d, theta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("effective capacity stays finite at extreme theta") {
  const RateDistribution d({1000.0, 2000.0}, {0.5, 0.5});
  const double c = effective_capacity(d, QosIndex(10.0));
  CHECK(std::isfinite(c));
  CHECK(c == doctest::Approx(1000.0 + std::log(2.0) / 10.0).epsilon(1e-12));
  CHECK(effective_capacity(d, QosIndex(10.0)) >= 1000.0);
}

TEST_CASE("approximated utility examples") {
  CHECK(approx_utility(kCoin, QosIndex(1.0)) == doctest::Approx(0.432332).epsilon(1e-6));
  CHECK(approx_utility(RateDistribution::constant(0.0), QosIndex(0.3)) == 0.0);
  const double small = approx_utility(kCoin, QosIndex(1e-6));
  CHECK(std::abs(small - 1.0) <= 1e-5);
}

TEST_CASE("payoff transform examples") {
  CHECK(payoff_transform(0.0, QosIndex(0.5)) == 0.0);
  CHECK(payoff_transform(2.0, QosIndex(0.01)) == doctest::Approx(1.98013).epsilon(1e-6));
  CHECK(std::abs(payoff_transform(5.0, QosIndex(1e-8)) - 5.0) <= 1e-6);
}

TEST_CASE("payoff transform is increasing and bounded by 1/theta") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double theta = std::pow(10.0, -4.0 + 4.0 * uniform01(rng));
    const double r1 = 10.0 * uniform01(rng);
    const double r2 = r1 + 1e-3 + uniform01(rng);
    const QosIndex q(theta);
    CHECK(payoff_transform(r1, q) < payoff_transform(r2, q));
    CHECK(payoff_transform(r2, q) <= 1.0 / theta);
  }
}

TEST_CASE("empirical effective capacity") {
  const std::vector<double> constant(50, 2.5);
  CHECK(empirical_effective_capacity(constant, QosIndex(0.4)) == doctest::Approx(2.5).epsilon(1e-15));
  const std::vector<double> pair = {0.0, 2.0};
  CHECK(empirical_effective_capacity(pair, QosIndex(1.0)) == doctest::Approx(0.566219).epsilon(1e-6));
  CHECK_THROWS_AS(empirical_effective_capacity(std::vector<double>{}, QosIndex(1.0)), InvalidInput);

  Rng rng(42);
  std::vector<double> samples;
  samples.reserve(1'000'000);
  for (int i = 0; i < 1'000'000; ++i) samples.push_back(uniform01(rng) < 0.5 ? 0.0 : 2.0);
  CHECK(std::abs(empirical_effective_capacity(samples, QosIndex(1.0)) - 0.566219) <= 0.01);
}

TEST_CASE("empirical estimate equals the plug-in distribution") {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> samples;
    const int t = testing::uniform_int(rng, 1, 40);
    for (int j = 0; j < t; ++j) samples.push_back(static_cast<double>(uniform_index(rng, 7)));
    std::vector<double> values;
    std::vector<double> probs;
    for (int v = 0; v <= 6; ++v) {
      const auto c = std::count(samples.begin(), samples.end(), static_cast<double>(v));
      if (c == 0) continue;
      values.push_back(v);
      probs.push_back(static_cast<double>(c) / t);
    }
    const RateDistribution law(values, probs);
    for (double theta : {0.01, 0.5, 2.0}) {
      CHECK(empirical_effective_capacity(samples, QosIndex(theta)) ==
            doctest::Approx(effective_capacity(law, QosIndex(theta))).epsilon(1e-12));
    }
  }
}

TEST_CASE("empirical estimate converges with the sample size") {
  Rng rng(77);
  const RateDistribution d({0.0, 1.0, 2.0, 3.0, 6.0}, {0.3376, 0.2348, 0.2517, 0.1757, 0.0002});
  const QosIndex theta(0.5);
  const double exact = effective_capacity(d, theta);
  double previous_error = INFINITY;
  for (long long t : {1'000LL, 100'000LL, 4'000'000LL}) {
    ExpMeanAccumulator acc(theta);
    for (long long i = 0; i < t; ++i) acc.add(d.values()[inverse_cdf_index(d.probs(), uniform01(rng))]);
    const double error = std::abs(acc.effective_capacity() - exact);
    CHECK(error <= 5.0 / std::sqrt(static_cast<double>(t)));
    if (t >= 100'000) CHECK(error <= previous_error * 1.5 + 1e-4);
    previous_error = error;
  }
}

TEST_CASE("streaming accumulator matches the batch estimate") {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> samples;
    const QosIndex theta(std::pow(10.0, -3.0 + 3.5 * uniform01(rng)));
    ExpMeanAccumulator acc(theta);
    for (int j = 0; j < 300; ++j) {
      // Occasional new minima force a rescale.
      samples.push_back(j % 37 == 0 ? 0.0 : 100.0 * uniform01(rng));
      acc.add(samples.back());
    }
    CHECK(acc.count() == 300);
    CHECK(acc.effective_capacity() ==
          doctest::Approx(empirical_effective_capacity(samples, theta)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ExpMeanAccumulator(QosIndex(1.0)).effective_capacity(), InvalidInput);
}

TEST_CASE("taylor diagnostic examples") {
  const auto d = taylor_diagnostic(RateDistribution::constant(4.0), QosIndex(0.3));
  CHECK(d.approx == 4.0);
  CHECK(d.residual == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(taylor_diagnostic(kCoin, QosIndex(0.1)).approx == doctest::Approx(0.95).epsilon(1e-15));
  for (double theta = 0.1; theta >= 1e-3; theta /= 2.0) {
    const double full = taylor_diagnostic(kCoin, QosIndex(theta)).residual;
    const double half = taylor_diagnostic(kCoin, QosIndex(theta / 2.0)).residual;
    CHECK(std::abs(half) <= 0.3 * std::abs(full));
  }
}

TEST_CASE("effective capacity decreases in theta") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto d = random_distribution(rng, true);
    double previous = INFINITY;
    for (double theta = 1e-4; theta <= 4.0; theta *= 1.7) {
      const double c = effective_capacity(d, QosIndex(theta));
      if (d.is_degenerate()) {
        CHECK(c <= previous + 1e-12);
      } else {
        CHECK(c < previous);
      }
      previous = c;
    }
  }
}

TEST_CASE("jensen bound and its strictness") {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const auto d = random_distribution(rng, true);
    for (double theta : {1e-3, 0.05, 0.5, 2.0}) {
      const double c = effective_capacity(d, QosIndex(theta));
      CHECK(c <= d.mean() + 1e-12);
      if (!d.is_degenerate()) CHECK(c < d.mean());
      CHECK(c >= d.min_support() - 1e-12);
      CHECK(c <= d.max_support() + 1e-12);
    }
  }
}

TEST_CASE("capacity approaches the mean monotonically as theta shrinks") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto d = random_distribution(rng, false);
    double previous_gap = INFINITY;
    for (double theta = 1.0; theta >= 1e-7; theta /= 10.0) {
      const double gap = std::abs(effective_capacity(d, QosIndex(theta)) - d.mean());
      CHECK(gap <= previous_gap);
      previous_gap = gap;
    }
    CHECK(previous_gap <= 1e-5);
  }
}

TEST_CASE("approximated utility is the transform of the capacity") {
  Rng rng(24);
  for (int i = 0; i < 300; ++i) {
    const auto d = random_distribution(rng, true);
    for (double theta : {1e-3, 0.05, 0.5, 2.0}) {
      const QosIndex q(theta);
      const double c = effective_capacity(d, q);
      const double u = approx_utility(d, q);
      CHECK(u == doctest::Approx((1.0 - std::exp(-theta * c)) / theta).epsilon(1e-12));
      CHECK(u <= c + 1e-12);
    }
  }
}

}  // namespace
}  // namespace specgame
