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

#include "specgame/channel_model.h"

#include <cmath>
#include <limits>
#include <string>

#include "specgame/errors.h"

namespace specgame {
namespace {

constexpr double kProbSumTolerance = 1e-9;

std::string channel_label(int id) { return "channel " + std::to_string(id); }

}  // namespace

ChannelSpec::ChannelSpec(int id, std::vector<double> rates, std::vector<double> probs)
    : id_(id), rates_(std::move(rates)), probs_(std::move(probs)) {
  if (rates_.empty()) {
    throw InvalidInput(channel_label(id_) + ": rate set is empty");
  }
  if (rates_.size() != probs_.size()) {
    throw InvalidInput(channel_label(id_) + ": " + std::to_string(rates_.size()) +
                       " rates but " + std::to_string(probs_.size()) + " probabilities");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < rates_.size(); ++k) {
    if (!std::isfinite(rates_[k]) || rates_[k] < 0.0) {
      throw InvalidInput(channel_label(id_) + ": rates must be finite and non-negative");
    }
    if (k > 0 && !(rates_[k] > rates_[k - 1])) {
      throw InvalidInput(channel_label(id_) + ": rates must be distinct and ascending");
    }
    if (!(probs_[k] >= 0.0 && probs_[k] <= 1.0)) {
      throw InvalidInput(channel_label(id_) + ": probability out of [0, 1]");
    }
    sum += probs_[k];
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    throw InvalidInput(channel_label(id_) + ": probabilities sum to " +
                       std::to_string(sum) + ", expected 1");
  }
}

double mean_rate(const ChannelSpec& spec) {
  double mean = 0.0;
  for (std::size_t k = 0; k < spec.num_states(); ++k) {
    mean += spec.probs()[k] * spec.rates()[k];
  }
  return mean;
}

std::vector<double> rayleigh_state_probs(double avg_snr_db,
                                         std::span<const double> thresholds) {
  if (!std::isfinite(avg_snr_db)) {
    throw InvalidInput("average SNR must be finite");
  }
  if (thresholds.size() < 2) {
    throw InvalidInput("need at least two SNR thresholds");
  }
  if (thresholds.front() != 0.0 || !std::isinf(thresholds.back())) {
    throw InvalidInput("SNR thresholds must start at 0 and end at +infinity");
  }
  for (std::size_t k = 1; k < thresholds.size(); ++k) {
    if (!(thresholds[k] > thresholds[k - 1])) {
      throw InvalidInput("SNR thresholds must be strictly ascending");
    }
  }
  const double mean_snr = std::pow(10.0, avg_snr_db / 10.0);
  // P(snr >= x) = exp(-x / mean_snr).
  auto tail = [mean_snr](double x) { return std::isinf(x) ? 0.0 : std::exp(-x / mean_snr); };
  std::vector<double> probs(thresholds.size() - 1);
  for (std::size_t k = 0; k + 1 < thresholds.size(); ++k) {
    probs[k] = tail(thresholds[k]) - tail(thresholds[k + 1]);
  }
  return probs;
}

std::vector<double> rayleigh_state_probs_db(double avg_snr_db,
                                            std::span<const double> interior_thresholds_db) {
  std::vector<double> thresholds;
  thresholds.reserve(interior_thresholds_db.size() + 2);
  thresholds.push_back(0.0);
  for (double db : interior_thresholds_db) {
    if (!std::isfinite(db)) throw InvalidInput("SNR thresholds must be finite in dB");
    thresholds.push_back(std::pow(10.0, db / 10.0));
  }
  thresholds.push_back(std::numeric_limits<double>::infinity());
  return rayleigh_state_probs(avg_snr_db, thresholds);
}

RateRealization sample_realization(std::span<const ChannelSpec> specs, Rng& rng) {
  RateRealization rates(specs.size());
  for (std::size_t m = 0; m < specs.size(); ++m) {
    const double u = uniform01(rng);
    rates[m] = specs[m].rates()[inverse_cdf_index(specs[m].probs(), u)];
  }
  return rates;
}

}  // namespace specgame
