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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lagsim/recall/cal.hpp"
#include "lagsim/retrieval/corpus.hpp"
#include "lagsim/sim/link.hpp"

namespace lagsim::recall {

enum class ScenarioKind { EarthTAR, EarthTARLatency, MarsTARWithCache, MarsTARNoCache };

/// CLI names: earth, earth-lat, mars-cache, mars-nocache.
const char* to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);

/// When Earth sends documents in the MarsTAR scenarios besides its reply to
/// each batch of judgments.
enum class ShippingCadence {
  /// Top up Mars so its backlog of unread documents never runs dry, timed
  /// from the reading-time model. Inactive without delay.
  JustInTime,
  /// Send one batch every roundtrip in which no judgments arrived.
  RoundtripHeartbeat,
};

struct StopRule {
  std::optional<double> time_budget_s;
  std::optional<double> recall_target;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::EarthTAR;
  /// Ignored by EarthTAR, which has no link.
  sim::LinkConfig link;
  /// Required iff MarsTARWithCache.
  std::optional<retrieval::DocSet> cache_seed;
  ShippingCadence cadence = ShippingCadence::JustInTime;
  StopRule stop;
  std::uint64_t seed = 42;

  void validate() const;
};

struct GainPoint {
  double time_s = 0.0;
  double recall = 0.0;
  std::size_t docs_shipped = 0;

  bool operator==(const GainPoint&) const = default;
};

struct GainCurve {
  std::string topic;
  /// One point per judged document.
  std::vector<GainPoint> points;
  std::size_t relevant_total = 0;
  std::size_t docs_judged = 0;
  std::size_t docs_shipped = 0;

  /// Time of the first point reaching `recall`, if any.
  std::optional<double> time_to_recall(double recall) const;
  /// Recall reached by time t (0 before the first point).
  double recall_at(double t) const;
};

/// Simulates one scenario for one topic. Relevance comes from `qrels`;
/// recall is over every relevant document the qrels list for the topic.
/// Throws InvalidArgument for an unknown topic, a topic without relevant
/// documents, or an invalid config.
GainCurve run_scenario(const ScenarioConfig& config, const retrieval::Corpus& corpus, const FeatureStore& store,
                       std::string_view topic, const retrieval::Qrels& qrels);

GainCurve run_scenario(const ScenarioConfig& config, const retrieval::Corpus& corpus, std::string_view topic,
                       const retrieval::Qrels& qrels);

}  // namespace lagsim::recall
