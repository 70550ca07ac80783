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

#ifndef SPECGAME_DYNAMICS_H_
#define SPECGAME_DYNAMICS_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "specgame/game.h"
#include "specgame/mixed_profile.h"

namespace specgame {

// Distribution of how many users other than `user` pick `channel` under P
// (Poisson-binomial; entry c is P(count = c), size N).
std::vector<double> others_on_channel(const MixedProfile& P, int user, int channel);

// Expected approximated utility of `user` on `channel` when everyone else
// plays P. Exact: the utility only depends on the others through how many of
// them share the channel.
double omega(const UtilityTable& approx_table, int user, int channel, const MixedProfile& P);
double omega(const GameSpec& game, int user, int channel, const MixedProfile& P);

// Replicator field dp_nm/dt = p_nm (omega_nm - sum_m' p_nm' omega_nm').
Matrix ode_rhs(const UtilityTable& approx_table, const MixedProfile& P);
Matrix ode_rhs(const GameSpec& game, const MixedProfile& P);

// Expected approximated-game potential E_P[(1 - potential_v(a)) / theta].
// Requires every user to share theta_common.
double potential_of_mixed(const GameSpec& game, const MixedProfile& P, QosIndex theta_common);

// max |ode_rhs| <= tol. Every vertex passes, so this alone does not certify
// an equilibrium.
bool check_stationarity(const GameSpec& game, const MixedProfile& P, double tol = 1e-9);

class IntegrationDiverged : public std::runtime_error {
 public:
  IntegrationDiverged(const std::string& what, long long step)
      : std::runtime_error(what), step_(step) {}
  long long step() const { return step_; }

 private:
  long long step_;
};

struct Trajectory {
  std::vector<MixedProfile> states;  // steps + 1 entries, states[0] = P0
  // Potential of each state; NaN when users' thetas differ.
  std::vector<double> potential;
  // max |ode_rhs| evaluated at each state.
  std::vector<double> max_rhs;
};

// Forward Euler on the replicator field; after each step negatives are
// clamped and rows renormalised. dt must lie in (0, 0.5].
Trajectory integrate(const GameSpec& game, const MixedProfile& P0, double dt, long long steps);

// Total-variation distance from P to the pure profile, worst user:
// max_n (1 - p_{n, a_n}).
double distance_to_pure(const MixedProfile& P, const ActionProfile& profile);

// Strategies drawn uniformly from the interior of each user's simplex.
MixedProfile random_interior_profile(int num_users, int num_channels, Rng& rng);

}  // namespace specgame

#endif  // SPECGAME_DYNAMICS_H_
