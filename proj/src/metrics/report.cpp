// Copyright 2026 The lagsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lagsim/metrics/report.hpp"

#include <algorithm>
#include <cmath>

#include "lagsim/util/error.hpp"

namespace lagsim::metrics {

using util::fixed;
using util::TableWriter;

TableRow earth_row(const RatioReport& report) {
  return TableRow{"Earth", 0.0, report.avg_earth_time_s, report.avg_earth_pages, 1.0, 1.0};
}

TableRow mars_row(const RatioReport& report, double lag_min) {
  return TableRow{"Mars", lag_min, report.avg_time_s, report.avg_pages, report.macro_E, report.macro_D};
}

std::string format_lag(double minutes) {
  if (std::isfinite(minutes) && minutes == std::floor(minutes) && std::fabs(minutes) < 1e15)
    return std::to_string(static_cast<long long>(minutes));
  return util::exact(minutes);
}

std::string render_table(std::span<const TableRow> rows, util::Delimiter delim) {
  TableWriter w(delim);
  w.row({"location", "lag_min", "avg_time_s", "avg_pages", "E", "D"});
  for (const TableRow& r : rows)
    w.row({r.location, format_lag(r.lag_min), fixed(r.avg_time_s), fixed(r.avg_pages), fixed(r.E), fixed(r.D)});
  return w.str();
}

std::string render_scatter(const RatioReport& report, View view, util::Delimiter delim) {
  TableWriter w(delim);
  w.row({"session_id", "duration_s", "pages"});
  for (const auto& s : report.per_session) {
    if (view == View::Earth)
      w.row({s.session_id, fixed(s.earth_time_s), std::to_string(s.earth_pages)});
    else
      w.row({s.session_id, fixed(s.mars_time_s), std::to_string(s.pages)});
  }
  return w.str();
}

std::string render_sessions(const RatioReport& report, util::Delimiter delim) {
  TableWriter w(delim);
  w.row({"session_id", "earth_time_s", "mars_time_s", "earth_pages", "pages", "waits", "E", "D"});
  for (const auto& s : report.per_session)
    w.row({s.session_id, fixed(s.earth_time_s), fixed(s.mars_time_s), std::to_string(s.earth_pages),
           std::to_string(s.pages), std::to_string(s.blocking_waits), fixed(s.E), fixed(s.D)});
  return w.str();
}

std::string render_exclusions(const RatioReport& report, util::Delimiter delim) {
  TableWriter w(delim);
  w.row({"session_id", "reason"});
  for (const auto& e : report.exclusions) w.row({e.session_id, e.reason});
  return w.str();
}

std::string render_hit_ratios(std::span<const HitRatioRow> rows, util::Delimiter delim) {
  TableWriter w(delim);
  w.row({"fraction", "clicked_ratio", "serp_ratio"});
  auto opt = [](const std::optional<double>& v) { return v ? fixed(*v) : std::string(); };
  for (const auto& r : rows) w.row({fixed(r.fraction), opt(r.clicked_ratio), opt(r.serp_ratio)});
  return w.str();
}

std::string render_gain_curve(const recall::GainCurve& curve, util::Delimiter delim) {
  TableWriter w(delim);
  w.row({"time_s", "recall", "shipped"});
  for (const auto& p : curve.points) w.row({fixed(p.time_s), fixed(p.recall, 6), std::to_string(p.docs_shipped)});
  return w.str();
}

std::vector<AggregatePoint> aggregate_curves(std::span<const recall::GainCurve> curves, double grid_s) {
  if (!(grid_s > 0.0)) throw InvalidArgument("aggregate grid step must be positive");
  std::vector<AggregatePoint> out;
  if (curves.empty()) return out;
  double end = 0.0;
  for (const auto& c : curves)
    if (!c.points.empty()) end = std::max(end, c.points.back().time_s);
  const auto steps = static_cast<std::size_t>(std::ceil(end / grid_s));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * grid_s;
    double sum = 0.0;
    for (const auto& c : curves) sum += c.recall_at(t);
    out.push_back({t, sum / static_cast<double>(curves.size())});
  }
  return out;
}

std::string render_aggregate(std::span<const AggregatePoint> points, util::Delimiter delim) {
  TableWriter w(delim);
  w.row({"time_s", "mean_recall"});
  for (const auto& p : points) w.row({fixed(p.time_s), fixed(p.mean_recall, 6)});
  return w.str();
}

}  // namespace lagsim::metrics
