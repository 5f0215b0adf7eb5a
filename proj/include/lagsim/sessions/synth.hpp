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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lagsim/sessions/log.hpp"

namespace lagsim::sessions {

struct SynthDocument {
  std::string docid;
  /// Latent page quality in [0, 1]; drives the click bias.
  double quality = 0.5;
};

/// Returns the ranked docids a search engine shows for a query.
using SerpFunction = std::function<std::vector<std::string>(const std::string& query)>;

struct ClickModel {
  /// Clicked results are drawn with weight rank^-position_decay * exp(quality_bias * q).
  double position_decay = 1.0;
  double quality_bias = 3.0;
};

struct SynthConfig {
  std::size_t n_sessions = 0;
  /// Groups of related queries; each session draws all its queries from one group.
  std::vector<std::vector<std::string>> query_pool;
  std::vector<SynthDocument> corpus;
  /// Optional engine. Without one, SERPs are drawn from the corpus with a
  /// per-query deterministic generator.
  SerpFunction serp;
  std::size_t serp_size = 10;
  double mean_queries_per_session = 4680.0 / 1257.0;
  double mean_clicks_per_session = 1685.0 / 1257.0;
  double mean_think_time_s = 20.0;
  double mean_query_gap_s = 30.0;
  double mean_click_delay_s = 8.0;
  double mean_dwell_s = 30.0;
  ClickModel click_model;
  std::uint64_t seed = 42;
};

/// Generates a desk-scale log. Deterministic for a fixed seed; every clicked
/// docid appears in the results of the interaction that clicked it.
/// Throws InvalidArgument on an empty query pool or empty corpus.
SessionLog synthesize_log(const SynthConfig& config);

}  // namespace lagsim::sessions
