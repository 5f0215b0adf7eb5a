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
#include <compare>

namespace lagsim::sim {

/// A point on the virtual time axis, in seconds. Real-valued; never quantized.
struct SimTime {
  double seconds = 0.0;

  constexpr SimTime() = default;
  constexpr explicit SimTime(double s) : seconds(s) {}

  bool valid() const { return std::isfinite(seconds) && seconds >= 0.0; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;
  friend constexpr SimTime operator+(SimTime t, double dt) { return SimTime{t.seconds + dt}; }
  friend constexpr double operator-(SimTime a, SimTime b) { return a.seconds - b.seconds; }
};

enum class Endpoint { Earth, Mars };

constexpr Endpoint other(Endpoint e) {
  return e == Endpoint::Earth ? Endpoint::Mars : Endpoint::Earth;
}

constexpr const char* to_string(Endpoint e) { return e == Endpoint::Earth ? "Earth" : "Mars"; }

}  // namespace lagsim::sim
