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

#ifndef SPECGAME_EFFECTIVE_CAPACITY_H_
#define SPECGAME_EFFECTIVE_CAPACITY_H_

#include <span>
#include <vector>

namespace specgame {

// Statistical QoS exponent theta > 0 (decay rate of the queue-length tail,
// units 1/packet). Large theta means a strict delay requirement.
class QosIndex {
 public:
  explicit QosIndex(double theta);
  double value() const { return theta_; }
  friend bool operator==(QosIndex, QosIndex) = default;

 private:
  double theta_;
};

// Law of an i.i.d. per-slot service rate.
class RateDistribution {
 public:
  RateDistribution(std::vector<double> values, std::vector<double> probs);
  static RateDistribution constant(double value);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& probs() const { return probs_; }

  double mean() const;
  // Population variance of the law.
  double variance() const;
  // Smallest value carrying positive probability.
  double min_support() const;
  double max_support() const;
  bool is_degenerate() const;

 private:
  std::vector<double> values_;
  std::vector<double> probs_;
};

// -(1/theta) ln E[exp(-theta x)].
double effective_capacity(const RateDistribution& dist, QosIndex theta);

// (1 - E[exp(-theta x)]) / theta. Always equals (1 - exp(-theta C)) / theta
// with C the effective capacity, hence never exceeds C.
double approx_utility(const RateDistribution& dist, QosIndex theta);

// Per-slot reward fed to the estimator: (1 - exp(-theta r)) / theta.
double payoff_transform(double rate, QosIndex theta);

// Plug-in estimate -(1/theta) ln((1/T) sum_i exp(-theta r_i)). Throws on an
// empty sample.
double empirical_effective_capacity(std::span<const double> samples, QosIndex theta);

struct TaylorDiagnostic {
  double approx;    // mean - theta/2 * variance
  double residual;  // effective_capacity - approx
};

TaylorDiagnostic taylor_diagnostic(const RateDistribution& dist, QosIndex theta);

// Streaming version of the empirical estimator. Keeps the running minimum as
// a shift so exp(-theta r) never underflows.
class ExpMeanAccumulator {
 public:
  explicit ExpMeanAccumulator(QosIndex theta) : theta_(theta.value()) {}

  void add(double rate);
  long long count() const { return count_; }
  // Throws when empty.
  double effective_capacity() const;

 private:
  double theta_;
  long long count_ = 0;
  double shift_ = 0.0;  // minimum rate seen so far
  double sum_ = 0.0;    // sum of expm1(-theta (r - shift))
};

}  // namespace specgame

#endif  // SPECGAME_EFFECTIVE_CAPACITY_H_
