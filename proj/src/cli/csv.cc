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


#include "specgame/cli/csv.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "specgame/cli/config.h"
#include "specgame/errors.h"

namespace specgame::cli {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  return fmt::format("{}", x);
}

std::string trials_csv(std::span<const TrialResult> trials) {
  std::string out = "trial,conv_slot,agg_ec_closed,agg_ec_empirical,profile\n";
  for (const auto& trial : trials) {
    out += fmt::format("{},{},{},{},{}\n", trial.trial,
                       trial.convergence_slot ? std::to_string(*trial.convergence_slot) : "",
                       format_number(trial.aggregate_closed),
                       format_number(trial.aggregate_empirical), trial.final_profile.to_string());
  }
  return out;
}

std::string users_csv(std::span<const TrialResult> trials) {
  std::string out = "trial,user,channel,ec_closed_form,ec_empirical\n";
  for (const auto& trial : trials) {
    for (std::size_t n = 0; n < trial.final_profile.size(); ++n) {
      out += fmt::format("{},{},{},{},{}\n", trial.trial, n + 1, trial.final_profile[n] + 1,
                         format_number(trial.ec_closed[n]), format_number(trial.ec_empirical[n]));
    }
  }
  return out;
}

std::string trace_csv(const TrialResult& trial) {
  std::string out = "slot,user,channel,p,q,payoff\n";
  for (std::size_t slot = 0; slot < trial.trace.size(); ++slot) {
    const SlotTrace& row = trial.trace[slot];
    for (int n = 0; n < row.p.rows(); ++n) {
      for (int m = 0; m < row.p.cols(); ++m) {
        out += fmt::format("{},{},{},{},{},{}\n", slot, n + 1, m + 1, format_number(row.p(n, m)),
                           format_number(row.q(n, m)),
                           row.actions[n] == m ? format_number(row.payoffs[n]) : "");
      }
    }
  }
  return out;
}

std::string evolution_csv(std::span<const EvolutionPoint> points) {
  std::string out = "slot,agg_ec_closed,agg_ec_window\n";
  for (const auto& point : points) {
    out += fmt::format("{},{},{}\n", point.slot, format_number(point.aggregate_closed),
                       format_number(point.aggregate_window));
  }
  return out;
}

std::string summary_csv(const ExperimentSummary& summary) {
  std::string out =
      "trials,mean_agg_ec_closed,std_agg_ec_closed,mean_agg_ec_empirical,std_agg_ec_empirical,"
      "convergence_fraction,mean_conv_slot\n";
  out += fmt::format("{},{},{},{},{},{},{}\n", summary.trials.size(),
                     format_number(summary.mean_aggregate_closed),
                     format_number(summary.std_aggregate_closed),
                     format_number(summary.mean_aggregate_empirical),
                     format_number(summary.std_aggregate_empirical),
                     format_number(summary.convergence_fraction),
                     summary.mean_convergence_slot ? format_number(*summary.mean_convergence_slot)
                                                   : "");
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows, SweepVariable variable) {
  std::string out = fmt::format(
      "{},algorithm,mean_agg_ec_closed,std_agg_ec_closed,mean_agg_ec_empirical,"
      "std_agg_ec_empirical,convergence_fraction,mean_conv_slot\n",
      to_string(variable));
  for (const auto& row : rows) {
    const ExperimentSummary& s = row.summary;
    out += fmt::format("{},{},{},{},{},{},{},{}\n", format_number(row.value),
                       to_string(row.algorithm), format_number(s.mean_aggregate_closed),
                       format_number(s.std_aggregate_closed),
                       format_number(s.mean_aggregate_empirical),
                       format_number(s.std_aggregate_empirical),
                       format_number(s.convergence_fraction),
                       s.mean_convergence_slot ? format_number(*s.mean_convergence_slot) : "");
  }
  return out;
}

std::string ode_csv(std::span<const Trajectory> trajectories, long long stride) {
  if (trajectories.empty()) throw InvalidInput("no trajectories to write");
  const MixedProfile& shape = trajectories.front().states.front();
  std::string out = "start,step,phi,max_rhs";
  for (int n = 0; n < shape.rows(); ++n) {
    for (int m = 0; m < shape.cols(); ++m) out += fmt::format(",p_{}_{}", n + 1, m + 1);
  }
  out += '\n';
  for (std::size_t s = 0; s < trajectories.size(); ++s) {
    const Trajectory& trajectory = trajectories[s];
    const std::size_t last = trajectory.states.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
      if (k % static_cast<std::size_t>(stride) != 0 && k != last) continue;
      const double phi = trajectory.potential[k];
      out += fmt::format("{},{},{},{}", s, k, std::isnan(phi) ? "" : format_number(phi),
                         format_number(trajectory.max_rhs[k]));
      for (double p : trajectory.states[k].data()) out += "," + format_number(p);
      out += '\n';
    }
  }
  return out;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidInput("csv: missing column " + std::string(name));
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool first = true;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view() : text.substr(end + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != table.header.size()) {
        throw InvalidInput("csv: row " + std::to_string(table.rows.size() + 1) +
                           " has the wrong number of fields");
      }
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InvalidInput("failed writing " + path.string());
}

}  // namespace specgame::cli
