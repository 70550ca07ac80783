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


#include "specgame/cli/plot.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "specgame/cli/csv.h"

namespace specgame::cli {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 450.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

Range padded(double lo, double hi) {
  if (!(lo < hi)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

std::vector<double> ticks(Range range) {
  const double raw = (range.hi - range.lo) / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double factor : {1.0, 2.0, 5.0, 10.0}) {
    step = factor * magnitude;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(range.lo / step) * step; t <= range.hi + step * 1e-9; t += step) {
    out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return out;
}

std::vector<double> column_values(const CsvTable& table, std::size_t col) {
  std::vector<double> out;
  for (const auto& row : table.rows) out.push_back(row[col].empty() ? NAN : std::stod(row[col]));
  return out;
}

void write_plot(const std::filesystem::path& path, const PlotSpec& spec,
                std::vector<std::filesystem::path>& written) {
  write_file(path, render_svg(spec));
  written.push_back(path);
}

// One series per channel of the first user, from the trace.
void trace_plots(const CsvTable& trace, const std::filesystem::path& dir,
                 std::vector<std::filesystem::path>& written) {
  const std::size_t slot = trace.column("slot");
  const std::size_t user = trace.column("user");
  const std::size_t channel = trace.column("channel");
  std::map<int, Series> p_series;
  std::map<int, Series> q_series;
  for (const auto& row : trace.rows) {
    if (row[user] != "1") continue;
    const int m = std::stoi(row[channel]);
    const double x = std::stod(row[slot]);
    for (auto* target : {&p_series, &q_series}) {
      Series& s = (*target)[m];
      s.name = "channel " + row[channel];
      s.x.push_back(x);
    }
    p_series[m].y.push_back(std::stod(row[trace.column("p")]));
    q_series[m].y.push_back(std::stod(row[trace.column("q")]));
  }
  PlotSpec p{"Channel selection probabilities of user 1", "slot", "probability", {}};
  PlotSpec q{"Reward estimates of user 1", "slot", "estimate", {}};
  for (auto& [m, s] : p_series) p.series.push_back(std::move(s));
  for (auto& [m, s] : q_series) q.series.push_back(std::move(s));
  write_plot(dir / "probability_evolution.svg", p, written);
  write_plot(dir / "q_evolution.svg", q, written);
}

void evolution_plot(const CsvTable& table, const std::filesystem::path& dir,
                    std::vector<std::filesystem::path>& written) {
  const std::vector<double> slots = column_values(table, table.column("slot"));
  PlotSpec spec{"Aggregate effective capacity", "slot", "packets/slot", {}};
  spec.series.push_back({"closed form at argmax profile", slots,
                         column_values(table, table.column("agg_ec_closed"))});
  spec.series.push_back(
      {"empirical, last window", slots, column_values(table, table.column("agg_ec_window"))});
  write_plot(dir / "aggregate_evolution.svg", spec, written);
}

void sweep_plot(const CsvTable& table, const std::filesystem::path& dir,
                std::vector<std::filesystem::path>& written) {
  const std::size_t algorithm = table.column("algorithm");
  const std::size_t value = 0;
  const std::size_t mean = table.column("mean_agg_ec_closed");
  std::vector<Series> series;
  for (const auto& row : table.rows) {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.name == row[algorithm]; });
    if (it == series.end()) {
      series.push_back({row[algorithm], {}, {}});
      it = series.end() - 1;
    }
    it->x.push_back(std::stod(row[value]));
    it->y.push_back(std::stod(row[mean]));
  }
  PlotSpec spec{"Mean aggregate effective capacity", table.header[value], "packets/slot",
                std::move(series)};
  write_plot(dir / "sweep.svg", spec, written);
}

void ode_plot(const CsvTable& table, const std::filesystem::path& dir,
              std::vector<std::filesystem::path>& written) {
  const std::size_t start = table.column("start");
  const std::size_t step = table.column("step");
  const std::size_t phi = table.column("phi");
  const std::size_t rhs = table.column("max_rhs");
  const bool has_phi = !table.rows.empty() && !table.rows.front()[phi].empty();
  std::map<int, Series> series;
  for (const auto& row : table.rows) {
    const int s = std::stoi(row[start]);
    Series& target = series[s];
    target.name = "start " + row[start];
    target.x.push_back(std::stod(row[step]));
    target.y.push_back(std::stod(row[has_phi ? phi : rhs]));
  }
  PlotSpec spec{has_phi ? "Potential along Euler trajectories" : "Drift along Euler trajectories",
                "step", has_phi ? "potential" : "max |rhs|", {}};
  for (auto& [s, item] : series) spec.series.push_back(std::move(item));
  write_plot(dir / "ode.svg", spec, written);
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  const Range xr = padded(x_lo, x_hi);
  Range yr = padded(y_lo, y_hi);
  const double margin = 0.05 * (yr.hi - yr.lo);
  yr = {yr.lo - margin, yr.hi + margin};
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight, kWidth, kHeight);
  out += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, kHeight);
  out += fmt::format("<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                     kLeft + plot_w / 2.0, escape(spec.title));
  out += fmt::format(
      "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
      "stroke=\"black\"/>\n",
      kLeft, kTop, plot_w, plot_h);
  for (double t : ticks(xr)) {
    out += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#dddddd\"/>\n"
        "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\">{4:.6g}</text>\n",
        px(t), kTop, kTop + plot_h, kTop + plot_h + 16.0, t);
  }
  for (double t : ticks(yr)) {
    out += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#dddddd\"/>\n"
        "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:.6g}</text>\n",
        kLeft, py(t), kLeft + plot_w, kLeft - 6.0, py(t) + 4.0, t);
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + plot_w / 2.0, kHeight - 18.0, escape(spec.x_label));
  out += fmt::format(
      "<text x=\"18\" y=\"{0:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.1f})\">"
      "{1}</text>\n",
      kTop + plot_h / 2.0, escape(spec.y_label));

  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const Series& s = spec.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::string points;
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", px(s.x[k]), py(s.y[k]));
    }
    out += fmt::format(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color,
        points);
    const double ly = kTop + 10.0 + 18.0 * static_cast<double>(i);
    out += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" "
        "stroke-width=\"2\"/>\n<text x=\"{4:.1f}\" y=\"{5:.1f}\">{6}</text>\n",
        kLeft + plot_w + 10.0, ly, kLeft + plot_w + 30.0, color, kLeft + plot_w + 36.0, ly + 4.0,
        escape(s.name));
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::filesystem::path> render_plots(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  if (std::filesystem::exists(dir / "trace.csv")) trace_plots(read_csv(dir / "trace.csv"), dir, written);
  if (std::filesystem::exists(dir / "evolution.csv")) {
    evolution_plot(read_csv(dir / "evolution.csv"), dir, written);
  }
  if (std::filesystem::exists(dir / "sweep.csv")) sweep_plot(read_csv(dir / "sweep.csv"), dir, written);
  if (std::filesystem::exists(dir / "ode.csv")) ode_plot(read_csv(dir / "ode.csv"), dir, written);
  return written;
}

}  // namespace specgame::cli
