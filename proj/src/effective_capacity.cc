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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specgame/errors.h"

namespace specgame {
namespace {

// ln E[exp(-theta x)] = -theta x_min + log1p(sum_j p_j expm1(-theta (x_j - x_min))).
// Factoring out the largest exponent keeps large theta*rate from underflowing,
// expm1/log1p keep small theta from cancelling.
double log_neg_mgf(const RateDistribution& dist, double theta) {
  const double x_min = dist.min_support();
  double s = 0.0;
  for (std::size_t j = 0; j < dist.values().size(); ++j) {
    if (dist.probs()[j] == 0.0) continue;
    s += dist.probs()[j] * std::expm1(-theta * (dist.values()[j] - x_min));
  }
  return -theta * x_min + std::log1p(s);
}

}  // namespace

QosIndex::QosIndex(double theta) : theta_(theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw InvalidInput("QoS index theta must be positive and finite, got " +
                       std::to_string(theta));
  }
}

RateDistribution::RateDistribution(std::vector<double> values, std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
  if (values_.empty() || values_.size() != probs_.size()) {
    throw InvalidInput("rate distribution needs matching, non-empty values and probs");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j]) || values_[j] < 0.0) {
      throw InvalidInput("rate values must be finite and non-negative");
    }
    if (!(probs_[j] >= 0.0)) throw InvalidInput("rate probabilities must be non-negative");
    sum += probs_[j];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidInput("rate probabilities sum to " + std::to_string(sum));
  }
}

RateDistribution RateDistribution::constant(double value) {
  return RateDistribution({value}, {1.0});
}

double RateDistribution::mean() const {
  double m = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) m += probs_[j] * values_[j];
  return m;
}

double RateDistribution::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const double d = values_[j] - m;
    v += probs_[j] * d * d;
  }
  return v;
}

double RateDistribution::min_support() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (probs_[j] > 0.0) lo = std::min(lo, values_[j]);
  }
  return lo;
}

double RateDistribution::max_support() const {
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (probs_[j] > 0.0) hi = std::max(hi, values_[j]);
  }
  return hi;
}

bool RateDistribution::is_degenerate() const { return min_support() == max_support(); }

double effective_capacity(const RateDistribution& dist, QosIndex theta) {
  const double c = -log_neg_mgf(dist, theta.value()) / theta.value();
  // Rounding may push the result a hair outside the support.
  return std::clamp(c, dist.min_support(), dist.max_support());
}

double approx_utility(const RateDistribution& dist, QosIndex theta) {
  return -std::expm1(log_neg_mgf(dist, theta.value())) / theta.value();
}

double payoff_transform(double rate, QosIndex theta) {
  return -std::expm1(-theta.value() * rate) / theta.value();
}

double empirical_effective_capacity(std::span<const double> samples, QosIndex theta) {
  if (samples.empty()) throw InvalidInput("empirical effective capacity needs samples");
  ExpMeanAccumulator acc(theta);
  for (double r : samples) acc.add(r);
  return acc.effective_capacity();
}

TaylorDiagnostic taylor_diagnostic(const RateDistribution& dist, QosIndex theta) {
  const double approx = dist.mean() - 0.5 * theta.value() * dist.variance();
  return {approx, effective_capacity(dist, theta) - approx};
}

void ExpMeanAccumulator::add(double rate) {
  if (count_ == 0) {
    shift_ = rate;
    sum_ = 0.0;
  } else if (rate < shift_) {
    // Re-anchor: every stored exp(-theta (r - old)) gains the factor f.
    const double log_f = -theta_ * (shift_ - rate);
    sum_ = std::exp(log_f) * sum_ + static_cast<double>(count_) * std::expm1(log_f);
    shift_ = rate;
  } else {
    sum_ += std::expm1(-theta_ * (rate - shift_));
  }
  ++count_;
}

double ExpMeanAccumulator::effective_capacity() const {
  if (count_ == 0) throw InvalidInput("empirical effective capacity needs samples");
  return shift_ - std::log1p(sum_ / static_cast<double>(count_)) / theta_;
}

}  // namespace specgame
