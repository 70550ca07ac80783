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

#include "specgame/simulator.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <string>
#include <thread>

#include "specgame/effective_capacity.h"
#include "specgame/errors.h"

namespace specgame {
namespace {

// Payoffs of the last `capacity` slots for every user.
class PayoffWindow {
 public:
  PayoffWindow(int num_users, long long capacity)
      : capacity_(static_cast<std::size_t>(capacity)), rows_(num_users) {}

  void push(std::span<const double> payoffs) {
    for (std::size_t n = 0; n < rows_.size(); ++n) {
      rows_[n].push_back(payoffs[n]);
      if (rows_[n].size() > capacity_) rows_[n].pop_front();
    }
  }

  double aggregate_ec(std::span<const QosIndex> thetas) const {
    double total = 0.0;
    for (std::size_t n = 0; n < rows_.size(); ++n) {
      ExpMeanAccumulator acc(thetas[n]);
      for (double r : rows_[n]) acc.add(r);
      total += acc.effective_capacity();
    }
    return total;
  }

 private:
  std::size_t capacity_;
  std::vector<std::deque<double>> rows_;
};

double closed_aggregate(const UtilityTable& table, const ActionProfile& profile,
                        std::vector<double>* per_user = nullptr) {
  const auto counts = congestion_counts(profile, table.num_channels());
  double total = 0.0;
  for (int n = 0; n < table.num_users(); ++n) {
    const double u = table(n, profile[n], counts[profile[n]]);
    if (per_user) per_user->push_back(u);
    total += u;
  }
  return total;
}

double sample_std(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

}  // namespace

void SimConfig::validate() const {
  if (iterations < 1) throw InvalidInput("iterations must be >= 1");
  if (trials < 1) throw InvalidInput("trials must be >= 1");
  if (window < 1 || window > iterations) {
    throw InvalidInput("window must lie in [1, iterations]");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  if (schedule.fixed_lambda && !(*schedule.fixed_lambda > 0.0 && *schedule.fixed_lambda <= 1.0)) {
    throw InvalidInput("lambda must lie in (0, 1]");
  }
  if (!(schedule.eta > 0.0 && schedule.eta <= 1.0)) throw InvalidInput("eta must lie in (0, 1]");
  if (!(sla_step > 0.0 && sla_step < 1.0)) throw InvalidInput("sla_step must lie in (0, 1)");
  if (sla_rate_max && !(*sla_rate_max > 0.0)) throw InvalidInput("sla_r_max must be positive");
}

std::vector<double> resolve_contention(Contention model, std::span<const double> realization,
                                       const ActionProfile& profile, Rng& rng) {
  const int num_channels = static_cast<int>(realization.size());
  std::vector<std::vector<int>> contenders(num_channels);
  for (std::size_t n = 0; n < profile.size(); ++n) contenders[profile[n]].push_back(static_cast<int>(n));
  std::vector<double> payoffs(profile.size(), 0.0);
  for (int m = 0; m < num_channels; ++m) {
    const auto& users = contenders[m];
    if (users.empty()) continue;
    if (model == Contention::kFairShare) {
      const double share = realization[m] / static_cast<double>(users.size());
      for (int n : users) payoffs[n] = share;
    } else {
      const int winner = users.size() == 1 ? users[0] : users[uniform_index(rng, users.size())];
      payoffs[winner] = realization[m];
    }
  }
  return payoffs;
}

RateDistribution per_slot_random_distribution(const GameSpec& game, int n) {
  (void)n;
  const int num_users = game.num_users();
  const int num_channels = game.num_channels();
  const double pick = 1.0 / num_channels;
  // Binomial(N - 1, 1/M) law of the number of others on the user's channel.
  std::vector<double> others(num_users, 0.0);
  others[0] = 1.0;
  for (int k = 1; k < num_users; ++k) {
    for (int c = k; c >= 1; --c) others[c] = others[c] * (1.0 - pick) + others[c - 1] * pick;
    others[0] *= 1.0 - pick;
  }
  std::map<double, double> mass;
  for (int m = 0; m < num_channels; ++m) {
    for (int c = 0; c < num_users; ++c) {
      if (others[c] == 0.0) continue;
      const auto dist = rate_distribution_on(game.channel(m), c + 1, game.contention());
      for (std::size_t j = 0; j < dist.values().size(); ++j) {
        mass[dist.values()[j]] += pick * others[c] * dist.probs()[j];
      }
    }
  }
  std::vector<double> values;
  std::vector<double> probs;
  for (const auto& [v, p] : mass) {
    values.push_back(v);
    probs.push_back(p);
  }
  return RateDistribution(std::move(values), std::move(probs));
}

TrialResult run_trial(const SimConfig& config, int trial_index) {
  config.validate();
  const GameSpec& game = config.game;
  const int num_users = game.num_users();
  const int num_channels = game.num_channels();
  const auto& thetas = game.thetas();
  const long long iterations = config.iterations;
  const UtilityTable ec_table(game, UtilityKind::kEffectiveCapacity);
  Rng rng = trial_rng(config.base_seed, static_cast<std::uint64_t>(trial_index));

  TrialResult result;
  result.trial = trial_index;

  std::optional<LearnerState> learner;
  std::optional<SlaState> sla;
  MixedProfile fixed_strategies(num_users, num_channels);
  ActionProfile fixed_profile;
  switch (config.algorithm) {
    case Algorithm::kProposed:
      learner = init_state(num_users, num_channels);
      break;
    case Algorithm::kSla:
      sla = init_sla_state(num_users, num_channels, config.sla_step,
                           config.sla_rate_max.value_or(game.max_rate() > 0.0 ? game.max_rate() : 1.0));
      break;
    case Algorithm::kRandom:
      if (config.random_mode == RandomMode::kPerTrial) {
        fixed_profile = random_baseline_profile(num_users, num_channels, rng);
        fixed_strategies = MixedProfile::pure(fixed_profile.channels(), num_channels);
      }
      break;
  }
  const bool per_slot_random =
      config.algorithm == Algorithm::kRandom && config.random_mode == RandomMode::kPerSlot;
  auto strategies = [&]() -> const MixedProfile& {
    if (learner) return learner->p;
    if (sla) return sla->p;
    return fixed_strategies;
  };

  std::vector<double> per_slot_closed;
  double per_slot_aggregate = 0.0;
  if (per_slot_random) {
    for (int n = 0; n < num_users; ++n) {
      per_slot_closed.push_back(
          effective_capacity(per_slot_random_distribution(game, n), thetas[n]));
      per_slot_aggregate += per_slot_closed.back();
    }
  }

  std::vector<ExpMeanAccumulator> from_half;
  std::vector<ExpMeanAccumulator> from_convergence;
  for (int n = 0; n < num_users; ++n) {
    from_half.emplace_back(thetas[n]);
    from_convergence.emplace_back(thetas[n]);
  }
  PayoffWindow window(num_users, config.window);
  const Matrix zero_q(num_users, num_channels, 0.0);
  ActionProfile last_actions;

  for (long long slot = 0; slot < iterations; ++slot) {
    const MixedProfile& p = strategies();
    if (!result.convergence_slot && !per_slot_random && is_converged(p, config.epsilon)) {
      result.convergence_slot = slot;
    }
    ActionProfile actions;
    if (config.algorithm == Algorithm::kRandom) {
      actions = per_slot_random ? random_baseline_profile(num_users, num_channels, rng)
                                : fixed_profile;
    } else {
      actions = select_actions(p, rng);
    }
    const RateRealization rates = sample_realization(game.channels(), rng);
    const std::vector<double> payoffs =
        resolve_contention(game.contention(), rates, actions, rng);

    if (config.record_trace) {
      result.trace.push_back({actions, payoffs, p, learner ? learner->q : zero_q});
    }
    for (int n = 0; n < num_users; ++n) {
      if (slot >= iterations / 2) from_half[n].add(payoffs[n]);
      if (result.convergence_slot) from_convergence[n].add(payoffs[n]);
    }
    window.push(payoffs);

    if (learner) {
      learner_step(*learner, actions, payoffs, thetas, config.schedule);
    } else if (sla) {
      sla_update(*sla, actions, payoffs);
    }
    last_actions = std::move(actions);

    if ((slot + 1) % config.window == 0) {
      const double closed = per_slot_random ? per_slot_aggregate
                                            : closed_aggregate(ec_table, argmax_profile(strategies()));
      result.evolution.push_back({slot + 1, closed, window.aggregate_ec(thetas)});
    }
  }

  result.final_strategies = strategies();
  if (!result.convergence_slot && !per_slot_random &&
      is_converged(result.final_strategies, config.epsilon)) {
    result.convergence_slot = iterations;
  }
  if (per_slot_random) {
    result.final_profile = last_actions;
    result.ec_closed = per_slot_closed;
    result.aggregate_closed = per_slot_aggregate;
  } else {
    result.final_profile = config.algorithm == Algorithm::kRandom
                               ? fixed_profile
                               : argmax_profile(result.final_strategies);
    result.aggregate_closed = closed_aggregate(ec_table, result.final_profile, &result.ec_closed);
  }
  const bool use_convergence = result.convergence_slot && *result.convergence_slot < iterations;
  for (int n = 0; n < num_users; ++n) {
    const auto& acc = use_convergence ? from_convergence[n] : from_half[n];
    result.ec_empirical.push_back(acc.effective_capacity());
    result.aggregate_empirical += result.ec_empirical.back();
  }
  return result;
}

ExperimentSummary run_experiment(const SimConfig& config, int threads) {
  config.validate();
  ExperimentSummary summary;
  summary.trials.resize(config.trials);
  const int workers = std::clamp(threads, 1, config.trials);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int t = next++; t < config.trials; t = next++) summary.trials[t] = run_trial(config, t);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<double> closed;
  std::vector<double> empirical;
  std::vector<double> convergence;
  for (const auto& trial : summary.trials) {
    closed.push_back(trial.aggregate_closed);
    empirical.push_back(trial.aggregate_empirical);
    if (trial.convergence_slot) convergence.push_back(static_cast<double>(*trial.convergence_slot));
  }
  summary.mean_aggregate_closed = mean_of(closed);
  summary.std_aggregate_closed = sample_std(closed, summary.mean_aggregate_closed);
  summary.mean_aggregate_empirical = mean_of(empirical);
  summary.std_aggregate_empirical = sample_std(empirical, summary.mean_aggregate_empirical);
  summary.convergence_fraction =
      static_cast<double>(convergence.size()) / static_cast<double>(config.trials);
  if (!convergence.empty()) summary.mean_convergence_slot = mean_of(convergence);

  const auto& first = summary.trials.front().evolution;
  summary.mean_evolution.resize(first.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    EvolutionPoint point{first[k].slot, 0.0, 0.0};
    for (const auto& trial : summary.trials) {
      point.aggregate_closed += trial.evolution[k].aggregate_closed;
      point.aggregate_window += trial.evolution[k].aggregate_window;
    }
    point.aggregate_closed /= config.trials;
    point.aggregate_window /= config.trials;
    summary.mean_evolution[k] = point;
  }
  return summary;
}

SimConfig apply_sweep_value(const SimConfig& base, SweepVariable variable, double value) {
  SimConfig config = base;
  switch (variable) {
    case SweepVariable::kUsers: {
      if (!(value >= 1.0) || value != std::floor(value)) {
        throw InvalidInput("swept user counts must be positive integers");
      }
      std::vector<QosIndex> users;
      const auto& source = base.game.thetas();
      for (int n = 0; n < static_cast<int>(value); ++n) users.push_back(source[n % source.size()]);
      config.game = GameSpec(std::move(users), base.game.channels(), base.game.contention());
      break;
    }
    case SweepVariable::kTheta: {
      std::vector<QosIndex> users(base.game.num_users(), QosIndex(value));
      config.game = GameSpec(std::move(users), base.game.channels(), base.game.contention());
      break;
    }
    case SweepVariable::kEta:
      config.schedule.eta = value;
      break;
  }
  config.validate();
  return config;
}

std::vector<SweepRow> sweep(const SimConfig& base, SweepVariable variable,
                            std::span<const double> values,
                            std::span<const Algorithm> algorithms, int threads) {
  if (values.empty()) throw InvalidInput("a sweep needs at least one value");
  std::vector<SweepRow> rows;
  for (double value : values) {
    for (Algorithm algorithm : algorithms) {
      SimConfig config = apply_sweep_value(base, variable, value);
      config.algorithm = algorithm;
      rows.push_back({value, algorithm, run_experiment(config, threads)});
    }
  }
  return rows;
}

}  // namespace specgame
