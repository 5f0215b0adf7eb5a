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

#include <doctest.h>

#include <string>
#include <vector>

#include "lagsim/sim/kernel.hpp"

using namespace lagsim;
using namespace lagsim::sim;

TEST_CASE("single scheduled event is next") {
  Kernel<std::string> k;
  std::vector<std::string> seen;
  k.on(Endpoint::Earth, [&](auto&, const auto& ev) { seen.push_back(ev.payload); });
  k.schedule(SimTime{0.0}, Endpoint::Earth, "only");
  CHECK(k.step());
  CHECK(seen == std::vector<std::string>{"only"});
  CHECK_FALSE(k.step());
}

TEST_CASE("simultaneous events dispatch in scheduling order") {
  Kernel<std::string> k;
  std::vector<std::string> seen;
  auto rec = [&](auto&, const auto& ev) { seen.push_back(ev.payload); };
  k.on(Endpoint::Earth, rec);
  k.on(Endpoint::Mars, rec);
  k.schedule(SimTime{5.0}, Endpoint::Mars, "A");
  k.schedule(SimTime{5.0}, Endpoint::Earth, "B");
  k.schedule(SimTime{1.0}, Endpoint::Earth, "first");
  k.run();
  CHECK(seen == std::vector<std::string>{"first", "A", "B"});
}

TEST_CASE("scheduling into the past is a causality error") {
  Kernel<int> k;
  k.schedule(SimTime{10.0}, Endpoint::Earth, 0);
  k.run();
  CHECK(k.now().seconds == 10.0);
  CHECK_THROWS_AS(k.schedule(SimTime{3.0}, Endpoint::Earth, 1), CausalityError);
  CHECK_THROWS_AS(k.run_until(SimTime{2.0}), CausalityError);
}

TEST_CASE("invalid times and links are rejected") {
  CHECK_THROWS_AS(Kernel<int>(LinkConfig{-1.0}), InvalidArgument);
  Kernel<int> k;
  CHECK_THROWS_AS(k.schedule(SimTime{-1.0}, Endpoint::Earth, 0), CausalityError);
  CHECK_THROWS_AS(k.transmit(0, Endpoint::Mars, Endpoint::Mars), InvalidArgument);
  CHECK_THROWS_AS(LinkConfig::from_roundtrip_minutes(-8), InvalidArgument);
}

TEST_CASE("link adds the one-way delay") {
  Kernel<int> k(LinkConfig{240.0});
  k.schedule(SimTime{100.0}, Endpoint::Earth, 0);
  SimTime arrival;
  k.on(Endpoint::Earth, [&](auto& kk, const auto&) { arrival = kk.transmit(1, Endpoint::Earth, Endpoint::Mars); });
  k.step();
  CHECK(arrival.seconds == 340.0);

  Kernel<int> local(LinkConfig::earth_local());
  CHECK(local.transmit(1, Endpoint::Mars, Endpoint::Earth, SimTime{7.5}).seconds == 7.5);
}

TEST_CASE("request and immediate reply cost one roundtrip") {
  Kernel<int> k(LinkConfig::closest());
  double reply_seen = -1.0;
  k.on(Endpoint::Earth, [&](auto& kk, const auto& ev) { kk.transmit(ev.payload + 1, Endpoint::Earth, Endpoint::Mars); });
  k.on(Endpoint::Mars, [&](auto& kk, const auto& ev) {
    if (ev.payload == 0)
      kk.transmit(0, Endpoint::Mars, Endpoint::Earth);
    else
      reply_seen = kk.now().seconds;
  });
  k.schedule(SimTime{0.0}, Endpoint::Mars, 0);
  k.run();
  CHECK(reply_seen == 480.0);
  CHECK(LinkConfig::closest().roundtrip_s() == 480.0);
  CHECK(LinkConfig::farthest().roundtrip_s() == 2880.0);
  CHECK(LinkConfig::from_roundtrip_minutes(48).one_way_delay_s == 1440.0);
}

TEST_CASE("run_until on an empty queue only moves the clock") {
  Kernel<int> k;
  CHECK(k.run_until(SimTime{100.0}) == 0);
  CHECK(k.now().seconds == 100.0);
}

TEST_CASE("run_until stops at the horizon") {
  Kernel<int> k;
  for (double t : {1.0, 2.0, 3.0}) k.schedule(SimTime{t}, Endpoint::Earth, 0);
  CHECK(k.run_until(SimTime{2.0}) == 2);
  CHECK(k.pending() == 1);
  CHECK(k.now().seconds == 2.0);
}

TEST_CASE("ping-pong every 480 s dispatches five times by 2400 s") {
  Kernel<int> k;
  std::size_t dispatches = 0;
  auto bounce = [&](auto& kk, const auto& ev) {
    ++dispatches;
    kk.schedule(kk.now() + 480.0, other(ev.endpoint), ev.payload + 1);
  };
  k.on(Endpoint::Earth, bounce);
  k.on(Endpoint::Mars, bounce);
  k.schedule(SimTime{480.0}, Endpoint::Earth, 0);
  k.run_until(SimTime{2400.0});
  CHECK(dispatches == 5);
  CHECK(k.dispatched() == 5);
}

TEST_CASE("stop halts the loop") {
  Kernel<int> k;
  k.on(Endpoint::Earth, [](auto& kk, const auto& ev) {
    if (ev.payload == 2) kk.stop();
  });
  for (int i = 0; i < 5; ++i) k.schedule(SimTime{double(i)}, Endpoint::Earth, i);
  CHECK(k.run() == 3);
  CHECK(k.stopped());
  CHECK(k.pending() == 2);
}

TEST_CASE("pending_now sees same-instant events") {
  Kernel<int> k;
  std::vector<bool> flags;
  k.on(Endpoint::Mars, [&](auto& kk, const auto&) { flags.push_back(kk.pending_now()); });
  k.schedule(SimTime{1.0}, Endpoint::Mars, 0);
  k.schedule(SimTime{1.0}, Endpoint::Mars, 1);
  k.schedule(SimTime{2.0}, Endpoint::Mars, 2);
  k.run();
  CHECK(flags == std::vector<bool>{true, false, false});
}

TEST_CASE("event order is a total order by time then sequence") {
  Kernel<int> k;
  std::vector<std::pair<double, int>> seen;
  k.on(Endpoint::Earth, [&](auto& kk, const auto& ev) { seen.emplace_back(kk.now().seconds, ev.payload); });
  std::uint64_t x = 12345;
  for (int i = 0; i < 500; ++i) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    k.schedule(SimTime{double((x >> 33) % 50)}, Endpoint::Earth, i);
  }
  k.run();
  REQUIRE(seen.size() == 500);
  for (std::size_t i = 1; i < seen.size(); ++i) {
    CHECK(seen[i - 1].first <= seen[i].first);
    if (seen[i - 1].first == seen[i].first) CHECK(seen[i - 1].second < seen[i].second);
  }
}
