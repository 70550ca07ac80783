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

#ifndef SPECGAME_RANDOM_H_
#define SPECGAME_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace specgame {

// Every random draw in the library goes through this engine. mt19937_64 is
// fully specified by the standard, so streams are identical across platforms.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one engine output.
// std::uniform_real_distribution is implementation-defined, so it is avoided.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) from one engine output.
std::size_t uniform_index(Rng& rng, std::size_t n);

std::uint64_t splitmix64(std::uint64_t x);

// Stream for trial `trial_index` of an experiment seeded with `base_seed`:
// the engine is seeded with splitmix64(base_seed ^ trial_index).
Rng trial_rng(std::uint64_t base_seed, std::uint64_t trial_index);

// Inverse-CDF lookup: smallest k with u < probs[0] + ... + probs[k]. Falls
// back to the last index carrying positive mass when rounding leaves
// u above the accumulated total.
std::size_t inverse_cdf_index(std::span<const double> probs, double u);

}  // namespace specgame

#endif  // SPECGAME_RANDOM_H_
