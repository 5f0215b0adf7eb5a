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

#include "lagsim/metrics/ratios.hpp"

#include "lagsim/util/error.hpp"

namespace lagsim::metrics {

std::optional<double> effort_ratio(const strategies::SessionOutcome& outcome) {
  if (!(outcome.earth_time_s > 0.0)) return std::nullopt;
  return outcome.mars_time_s / outcome.earth_time_s;
}

std::optional<double> data_ratio(const strategies::SessionOutcome& outcome, std::size_t earth_pages) {
  if (earth_pages == 0) return std::nullopt;
  return static_cast<double>(outcome.pages_transferred) / static_cast<double>(earth_pages);
}

RatioReport ratio_report(const sessions::SessionLog& log, std::span<const strategies::SessionOutcome> outcomes) {
  if (outcomes.size() != log.sessions.size())
    throw InvalidArgument("ratio_report: " + std::to_string(outcomes.size()) + " outcomes for " +
                          std::to_string(log.sessions.size()) + " sessions");
  RatioReport r;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& session = log.sessions[i];
    const auto& o = outcomes[i];
    const std::size_t earth_pages = sessions::earth_page_count(session);
    const auto e = effort_ratio(o);
    const auto d = data_ratio(o, earth_pages);
    if (!e) {
      r.exclusions.push_back({session.id, "zero Earth duration"});
      continue;
    }
    if (!d) {
      r.exclusions.push_back({session.id, "zero Earth pages"});
      continue;
    }
    r.per_session.push_back(
        SessionRatios{session.id, o.earth_time_s, earth_pages, o.mars_time_s, o.pages_transferred, o.blocking_waits, *e, *d});
  }
  if (r.per_session.empty()) return r;
  for (const auto& s : r.per_session) {
    r.macro_E += s.E;
    r.macro_D += s.D;
    r.avg_time_s += s.mars_time_s;
    r.avg_pages += static_cast<double>(s.pages);
    r.avg_earth_time_s += s.earth_time_s;
    r.avg_earth_pages += static_cast<double>(s.earth_pages);
  }
  const double n = static_cast<double>(r.per_session.size());
  r.macro_E /= n;
  r.macro_D /= n;
  r.avg_time_s /= n;
  r.avg_pages /= n;
  r.avg_earth_time_s /= n;
  r.avg_earth_pages /= n;
  return r;
}

}  // namespace lagsim::metrics
