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

#include "specgame/mixed_profile.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "specgame/errors.h"

namespace specgame {

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

MixedProfile::MixedProfile(int num_users, int num_channels)
    : Matrix(num_users, num_channels, 1.0 / num_channels) {}

MixedProfile::MixedProfile(Matrix probs) : Matrix(std::move(probs)) {
  for (int n = 0; n < rows(); ++n) {
    double sum = 0.0;
    for (double p : row(n)) {
      if (!(p >= 0.0)) {
        throw InvalidInput("mixed strategy of user " + std::to_string(n + 1) +
                           " has a negative or NaN entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvalidInput("mixed strategy of user " + std::to_string(n + 1) +
                         " sums to " + std::to_string(sum));
    }
  }
}

MixedProfile MixedProfile::pure(std::span<const int> channels, int num_channels) {
  Matrix m(static_cast<int>(channels.size()), num_channels, 0.0);
  for (std::size_t n = 0; n < channels.size(); ++n) m(static_cast<int>(n), channels[n]) = 1.0;
  return MixedProfile(std::move(m));
}

void MixedProfile::renormalize() {
  for (int n = 0; n < rows(); ++n) {
    auto r = row(n);
    double sum = 0.0;
    for (double& p : r) {
      p = std::max(p, 0.0);
      sum += p;
    }
    for (double& p : r) p /= sum;
  }
}

}  // namespace specgame
