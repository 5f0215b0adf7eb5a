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

#include <cmath>

#include "lagsim/util/error.hpp"

namespace lagsim::sim {

/// Symmetric Earth-Mars link. Bandwidth is not modeled; only propagation delay.
struct LinkConfig {
  double one_way_delay_s = 0.0;

  constexpr double roundtrip_s() const { return 2.0 * one_way_delay_s; }

  static LinkConfig from_roundtrip_s(double rtt_s) {
    if (!std::isfinite(rtt_s) || rtt_s < 0.0)
      throw InvalidArgument("roundtrip must be a finite non-negative number of seconds");
    return LinkConfig{rtt_s / 2.0};
  }
  static LinkConfig from_roundtrip_minutes(double rtt_min) { return from_roundtrip_s(rtt_min * 60.0); }

  /// Planets at their closest: 8 minute roundtrip.
  static constexpr LinkConfig closest() { return LinkConfig{240.0}; }
  /// Planets farthest apart: 48 minute roundtrip.
  static constexpr LinkConfig farthest() { return LinkConfig{1440.0}; }
  static constexpr LinkConfig earth_local() { return LinkConfig{0.0}; }
};

}  // namespace lagsim::sim
