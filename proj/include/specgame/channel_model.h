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

#ifndef SPECGAME_CHANNEL_MODEL_H_
#define SPECGAME_CHANNEL_MODEL_H_

#include <span>
#include <vector>

#include "specgame/random.h"

namespace specgame {

// A finite-rate channel: K rate states (packets/slot) and their
// probabilities. Rates are distinct and ascending, probabilities sum to 1.
// States are i.i.d. across slots.
class ChannelSpec {
 public:
  // Throws InvalidInput when any invariant fails; the message names the
  // channel id.
  ChannelSpec(int id, std::vector<double> rates, std::vector<double> probs);

  int id() const { return id_; }
  const std::vector<double>& rates() const { return rates_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t num_states() const { return rates_.size(); }
  double max_rate() const { return rates_.back(); }

  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;

 private:
  int id_;
  std::vector<double> rates_;
  std::vector<double> probs_;
};

// Expected rate sum_k probs[k] * rates[k].
double mean_rate(const ChannelSpec& spec);

// Rate-state probabilities of a Rayleigh channel (exponential SNR) with the
// given average SNR in dB. `thresholds` are K+1 ascending linear SNR
// boundaries, first 0 and last +infinity; state k covers
// [thresholds[k], thresholds[k+1]).
std::vector<double> rayleigh_state_probs(double avg_snr_db,
                                         std::span<const double> thresholds);

// Convenience for configs: K-1 interior boundaries in dB, wrapped with 0 and
// +infinity before calling rayleigh_state_probs.
std::vector<double> rayleigh_state_probs_db(double avg_snr_db,
                                            std::span<const double> interior_thresholds_db);

// Per-channel rate of one slot, indexed like the channel list.
using RateRealization = std::vector<double>;

// Draws one rate per channel by inverse CDF, one uniform per channel in
// channel order.
RateRealization sample_realization(std::span<const ChannelSpec> specs, Rng& rng);

}  // namespace specgame

#endif  // SPECGAME_CHANNEL_MODEL_H_
