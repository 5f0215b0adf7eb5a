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

#include "lagsim/strategies/policy.hpp"

#include <json.hpp>

#include "lagsim/util/error.hpp"

namespace lagsim::strategies {

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Baseline: return "baseline";
    case PolicyKind::SerpPrefetch: return "serp";
    case PolicyKind::TopicalPrefetch: return "topical";
    case PolicyKind::SuggestionPrefetch: return "suggest";
    case PolicyKind::StaticCache: return "cache";
  }
  return "?";
}

PolicyKind policy_kind_from_string(std::string_view name) {
  for (PolicyKind k : {PolicyKind::Baseline, PolicyKind::SerpPrefetch, PolicyKind::TopicalPrefetch,
                       PolicyKind::SuggestionPrefetch, PolicyKind::StaticCache}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidArgument("unknown policy '" + std::string(name) + "'");
}

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

SuggestionProvider::SuggestionProvider(std::map<std::string, std::vector<std::string>> table) {
  for (auto& [q, list] : table) {
    auto& dst = table_[trim(q)];
    for (const std::string& s : list) dst.push_back(trim(s));
  }
}

SuggestionProvider SuggestionProvider::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("suggestions: ") + e.what(), 0, 0);
  }
  if (!j.is_object()) throw SchemaError("suggestions: expected an object of query -> [suggestion]");
  std::map<std::string, std::vector<std::string>> table;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_array()) throw SchemaError("suggestions: value for '" + it.key() + "' is not an array");
    auto& dst = table[it.key()];
    for (const auto& s : it.value()) {
      if (!s.is_string()) throw SchemaError("suggestions: non-string suggestion for '" + it.key() + "'");
      dst.push_back(s.get<std::string>());
    }
  }
  return SuggestionProvider(std::move(table));
}

const std::vector<std::string>& SuggestionProvider::suggestions(std::string_view query) const {
  static const std::vector<std::string> kEmpty;
  auto it = table_.find(trim(query));
  return it == table_.end() ? kEmpty : it->second;
}

void PolicyConfig::validate() const {
  const bool topical = kind == PolicyKind::TopicalPrefetch;
  const bool cache = kind == PolicyKind::StaticCache;
  if (topical && !k) throw InvalidArgument("topical prefetch requires k");
  if (!topical && k) throw InvalidArgument("k is only meaningful for topical prefetch");
  if (k && *k == 0) throw InvalidArgument("k must be positive");
  if (cache && !cache_fraction) throw InvalidArgument("static cache requires cache_fraction");
  if (!cache && cache_fraction) throw InvalidArgument("cache_fraction is only meaningful for static cache");
  if (cache_fraction && !(*cache_fraction >= 0.0 && *cache_fraction <= 1.0))
    throw InvalidArgument("cache_fraction must be in [0, 1]");
  if (kind == PolicyKind::SuggestionPrefetch && !suggestions)
    throw InvalidArgument("suggestion prefetch requires a suggestion provider");
}

}  // namespace lagsim::strategies
