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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lagsim::strategies {

enum class PolicyKind { Baseline, SerpPrefetch, TopicalPrefetch, SuggestionPrefetch, StaticCache };

/// CLI names: baseline, serp, topical, suggest, cache.
const char* to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string_view name);

/// Query -> ordered suggestion list. Keys and suggestions are whitespace-trimmed
/// on load; a missing key means no suggestions.
class SuggestionProvider {
 public:
  SuggestionProvider() = default;
  explicit SuggestionProvider(std::map<std::string, std::vector<std::string>> table);

  /// JSON object mapping each query to an array of suggestion strings.
  static SuggestionProvider from_json(std::string_view text);

  const std::vector<std::string>& suggestions(std::string_view query) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> table_;
};

std::string trim(std::string_view s);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::Baseline;
  /// Topical depth; required iff TopicalPrefetch.
  std::optional<std::size_t> k;
  /// Required iff StaticCache.
  std::optional<double> cache_fraction;
  /// Required iff SuggestionPrefetch. Not owned.
  const SuggestionProvider* suggestions = nullptr;
  /// StaticCache also pushes the uncached pages linked from each SERP.
  bool combine_serp_prefetch = true;

  /// Throws InvalidArgument when a required field is missing or a field is
  /// set for a policy that does not use it.
  void validate() const;
};

struct HitStats {
  std::size_t hits = 0;
  std::size_t candidates = 0;

  bool operator==(const HitStats&) const = default;
};

struct SessionOutcome {
  double earth_time_s = 0.0;
  double mars_time_s = 0.0;
  std::size_t pages_transferred = 0;
  std::size_t blocking_waits = 0;
  double wait_time_s = 0.0;
  std::optional<HitStats> hits;
};

}  // namespace lagsim::strategies
