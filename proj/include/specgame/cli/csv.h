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


#ifndef SPECGAME_CLI_CSV_H_
#define SPECGAME_CLI_CSV_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specgame/dynamics.h"
#include "specgame/simulator.h"

namespace specgame::cli {

// Shortest text that reads back to the same double.
std::string format_number(double x);

// trial,conv_slot,agg_ec_closed,agg_ec_empirical,profile
std::string trials_csv(std::span<const TrialResult> trials);

// trial,user,channel,ec_closed_form,ec_empirical; channel is 1-based.
std::string users_csv(std::span<const TrialResult> trials);

// slot,user,channel,p,q,payoff; payoff is filled on the chosen channel only.
std::string trace_csv(const TrialResult& trial);

// slot,agg_ec_closed,agg_ec_window
std::string evolution_csv(std::span<const EvolutionPoint> points);

std::string summary_csv(const ExperimentSummary& summary);

std::string sweep_csv(std::span<const SweepRow> rows, SweepVariable variable);

// start,step,phi,max_rhs,p_<user>_<channel>...; every `stride`-th step plus
// the last one. phi is empty for heterogeneous QoS indices.
std::string ode_csv(std::span<const Trajectory> trajectories, long long stride);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws InvalidInput for a missing column.
  std::size_t column(std::string_view name) const;
};

// Plain comma-separated text without quoting.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace specgame::cli

#endif  // SPECGAME_CLI_CSV_H_
