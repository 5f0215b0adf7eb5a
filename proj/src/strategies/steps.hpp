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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "lagsim/sessions/log.hpp"

namespace lagsim::strategies::detail {

/// One user action in replay order: a query (click unset) or a click.
struct Step {
  double t = 0.0;
  std::size_t interaction = 0;
  std::optional<std::size_t> click;
};

/// Queries at their start, clicks at their start (never before their own
/// query), stably ordered by time.
inline std::vector<Step> build_steps(const sessions::Session& session) {
  std::vector<Step> steps;
  for (std::size_t i = 0; i < session.interactions.size(); ++i) {
    const auto& it = session.interactions[i];
    steps.push_back(Step{it.starttime_s, i, std::nullopt});
    for (std::size_t c = 0; c < it.clicks.size(); ++c)
      steps.push_back(Step{std::max(it.clicks[c].starttime_s, it.starttime_s), i, c});
  }
  std::stable_sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.t < b.t; });
  return steps;
}

/// Index of the first interaction after `after` whose trimmed query is `s`.
std::optional<std::size_t> find_later_query(const sessions::Session& session, std::size_t after,
                                            const std::string& trimmed);

}  // namespace lagsim::strategies::detail
