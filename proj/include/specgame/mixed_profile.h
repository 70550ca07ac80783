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

#ifndef SPECGAME_MIXED_PROFILE_H_
#define SPECGAME_MIXED_PROFILE_H_

#include <span>
#include <vector>

namespace specgame {

// Dense row-major users x channels matrix of doubles. Used for mixed
// strategies, estimate tables and ODE right-hand sides.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[index(r, c)]; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<double> row(int r) { return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)}; }
  std::span<const double> row(int r) const {
    return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)};
  }
  const std::vector<double>& data() const { return data_; }

  // Largest absolute entry.
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Per-user mixed strategies: row n is user n's distribution over channels.
// Each row is non-negative and sums to 1 within 1e-9.
class MixedProfile : public Matrix {
 public:
  MixedProfile() = default;
  // Uniform strategies.
  MixedProfile(int num_users, int num_channels);
  // Validates rows; throws InvalidInput otherwise.
  explicit MixedProfile(Matrix probs);

  int num_users() const { return rows(); }
  int num_channels() const { return cols(); }

  // All users pure on the given channels.
  static MixedProfile pure(std::span<const int> channels, int num_channels);

  // Clamps negatives to zero and rescales each row to sum 1.
  void renormalize();
};

}  // namespace specgame

#endif  // SPECGAME_MIXED_PROFILE_H_
