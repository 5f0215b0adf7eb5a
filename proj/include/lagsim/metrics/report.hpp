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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lagsim/metrics/ratios.hpp"
#include "lagsim/recall/scenario.hpp"
#include "lagsim/util/csv.hpp"

namespace lagsim::metrics {

/// One line of a location/lag summary table.
struct TableRow {
  std::string location;
  double lag_min = 0.0;
  double avg_time_s = 0.0;
  double avg_pages = 0.0;
  double E = 1.0;
  double D = 1.0;
};

/// The Earth reference row: Earth averages with E = D = 1.
TableRow earth_row(const RatioReport& report);
TableRow mars_row(const RatioReport& report, double lag_min);

/// location,lag_min,avg_time_s,avg_pages,E,D with three decimals.
std::string render_table(std::span<const TableRow> rows, util::Delimiter delim = util::Delimiter::Comma);

/// session_id,duration_s,pages for every included session; Earth or Mars view.
enum class View { Earth, Mars };
std::string render_scatter(const RatioReport& report, View view, util::Delimiter delim = util::Delimiter::Comma);

/// session_id,earth_time_s,mars_time_s,earth_pages,pages,waits,E,D.
std::string render_sessions(const RatioReport& report, util::Delimiter delim = util::Delimiter::Comma);

/// session_id,reason.
std::string render_exclusions(const RatioReport& report, util::Delimiter delim = util::Delimiter::Comma);

struct HitRatioRow {
  double fraction = 0.0;
  std::optional<double> clicked_ratio;
  std::optional<double> serp_ratio;
};

/// fraction,clicked_ratio,serp_ratio; absent ratios are left empty.
std::string render_hit_ratios(std::span<const HitRatioRow> rows, util::Delimiter delim = util::Delimiter::Comma);

/// time_s,recall,shipped.
std::string render_gain_curve(const recall::GainCurve& curve, util::Delimiter delim = util::Delimiter::Comma);

/// Mean recall over topics on a regular time grid (step `grid_s`, up to the
/// last point of any curve); each curve holds its final recall after it ends.
struct AggregatePoint {
  double time_s = 0.0;
  double mean_recall = 0.0;
};
std::vector<AggregatePoint> aggregate_curves(std::span<const recall::GainCurve> curves, double grid_s);

/// time_s,mean_recall.
std::string render_aggregate(std::span<const AggregatePoint> points, util::Delimiter delim = util::Delimiter::Comma);

/// Minutes without trailing zeros ("8", "0.5").
std::string format_lag(double minutes);

}  // namespace lagsim::metrics
