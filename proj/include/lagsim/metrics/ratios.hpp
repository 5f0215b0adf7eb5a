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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lagsim/sessions/log.hpp"
#include "lagsim/strategies/policy.hpp"

namespace lagsim::metrics {

/// E = mars_time / earth_time; absent when the Earth duration is not positive.
std::optional<double> effort_ratio(const strategies::SessionOutcome& outcome);

/// D = pages_transferred / earth_pages; absent when earth_pages is zero.
std::optional<double> data_ratio(const strategies::SessionOutcome& outcome, std::size_t earth_pages);

struct SessionRatios {
  std::string session_id;
  double earth_time_s = 0.0;
  std::size_t earth_pages = 0;
  double mars_time_s = 0.0;
  std::size_t pages = 0;
  std::size_t blocking_waits = 0;
  double E = 0.0;
  double D = 0.0;
};

struct Exclusion {
  std::string session_id;
  std::string reason;
};

/// Per-session ratios and their macro averages (mean of per-session values,
/// not a ratio of means). Excluded sessions count in none of the averages.
struct RatioReport {
  std::vector<SessionRatios> per_session;
  std::vector<Exclusion> exclusions;
  double macro_E = 0.0;
  double macro_D = 0.0;
  double avg_time_s = 0.0;
  double avg_pages = 0.0;
  double avg_earth_time_s = 0.0;
  double avg_earth_pages = 0.0;
};

/// Pairs each session with its outcome (same order). Throws InvalidArgument
/// on a length mismatch.
RatioReport ratio_report(const sessions::SessionLog& log, std::span<const strategies::SessionOutcome> outcomes);

}  // namespace lagsim::metrics
