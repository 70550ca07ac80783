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


#ifndef SPECGAME_CLI_PLOT_H_
#define SPECGAME_CLI_PLOT_H_

#include <filesystem>
#include <string>
#include <vector>

namespace specgame::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

std::string render_svg(const PlotSpec& spec);

// Reads the CSV files present in `dir` and writes the matching SVG line
// plots next to them. Returns the written files. Output depends on the CSV
// contents only.
std::vector<std::filesystem::path> render_plots(const std::filesystem::path& dir);

}  // namespace specgame::cli

#endif  // SPECGAME_CLI_PLOT_H_
