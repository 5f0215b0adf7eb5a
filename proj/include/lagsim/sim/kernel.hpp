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
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "lagsim/sim/link.hpp"
#include "lagsim/sim/time.hpp"
#include "lagsim/util/error.hpp"

namespace lagsim::sim {

/// Deterministic discrete-event kernel with two endpoints joined by a
/// fixed-delay link.
///
/// Events are dispatched in (time, sequence) order; the sequence number is
/// assigned at scheduling time, so simultaneous events run in the order they
/// were scheduled. A kernel is single-threaded. Independent simulations each
/// own their kernel and can run concurrently.
template <class Payload>
class Kernel {
 public:
  struct Event {
    SimTime at;
    Endpoint endpoint = Endpoint::Earth;
    Payload payload{};
    std::uint64_t seq = 0;
  };

  using Handler = std::function<void(Kernel&, const Event&)>;
  using Tracer = std::function<void(const Event&)>;

  explicit Kernel(LinkConfig link = {}) : link_(link) {
    if (!(link.one_way_delay_s >= 0.0) || !std::isfinite(link.one_way_delay_s))
      throw InvalidArgument("one-way delay must be finite and non-negative");
  }

  void on(Endpoint endpoint, Handler handler) { handlers_[index(endpoint)] = std::move(handler); }
  void set_tracer(Tracer tracer) { tracer_ = std::move(tracer); }

  const LinkConfig& link() const { return link_; }
  SimTime now() const { return clock_; }
  std::size_t pending() const { return queue_.size(); }

  /// True when another event is queued for the current instant. Actors use
  /// this to defer decisions until every same-time delivery has landed.
  bool pending_now() const { return !queue_.empty() && queue_.top().at == clock_; }

  std::uint64_t schedule(SimTime at, Endpoint endpoint, Payload payload) {
    if (!at.valid()) throw CausalityError("event time must be finite and non-negative");
    if (at < clock_) {
      throw CausalityError("event at t=" + std::to_string(at.seconds) +
                           " precedes clock t=" + std::to_string(clock_.seconds));
    }
    const std::uint64_t seq = next_seq_++;
    queue_.push(Event{at, endpoint, std::move(payload), seq});
    return seq;
  }

  /// Sends `payload` across the link; it is delivered to `to` one one-way
  /// delay after `at`. Returns the arrival time.
  SimTime transmit(Payload payload, Endpoint from, Endpoint to, SimTime at) {
    if (from == to) throw InvalidArgument("transmit requires distinct endpoints");
    if (at < clock_) throw CausalityError("cannot transmit from the past");
    const SimTime arrival = at + link_.one_way_delay_s;
    schedule(arrival, to, std::move(payload));
    ++transmitted_;
    return arrival;
  }

  SimTime transmit(Payload payload, Endpoint from, Endpoint to) {
    return transmit(std::move(payload), from, to, clock_);
  }

  /// Dispatches the next event, if any. Returns false on an empty queue.
  bool step() {
    if (queue_.empty()) return false;
    Event ev = queue_.top();
    queue_.pop();
    clock_ = ev.at;
    ++dispatched_;
    if (tracer_) tracer_(ev);
    if (auto& h = handlers_[index(ev.endpoint)]) h(*this, ev);
    return true;
  }

  /// Dispatches every event with at <= t, then advances the clock to t.
  std::size_t run_until(SimTime t) {
    if (t < clock_) throw CausalityError("run_until target precedes clock");
    std::size_t n = 0;
    while (!queue_.empty() && queue_.top().at <= t && !stopped_) {
      step();
      ++n;
    }
    if (!stopped_) clock_ = t;
    return n;
  }

  /// Dispatches until the queue drains or stop() is called.
  std::size_t run() {
    std::size_t n = 0;
    while (!stopped_ && step()) ++n;
    return n;
  }

  void stop() { stopped_ = true; }
  bool stopped() const { return stopped_; }

  std::uint64_t transmitted() const { return transmitted_; }
  std::uint64_t dispatched() const { return dispatched_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  static constexpr std::size_t index(Endpoint e) { return e == Endpoint::Earth ? 0 : 1; }

  LinkConfig link_;
  SimTime clock_{};
  std::uint64_t next_seq_ = 0;
  std::uint64_t transmitted_ = 0;
  std::uint64_t dispatched_ = 0;
  bool stopped_ = false;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  Handler handlers_[2];
  Tracer tracer_;
};

}  // namespace lagsim::sim
