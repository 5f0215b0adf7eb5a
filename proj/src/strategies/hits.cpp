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

#include "lagsim/strategies/hits.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "lagsim/util/error.hpp"

namespace lagsim::strategies {

std::optional<double> HitReport::ratio() const {
  if (candidates == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(candidates);
}

HitStats topical_hits(const sessions::Session& session, const retrieval::Bm25Scorer& scorer, std::size_t k,
                      std::vector<std::string>* missing) {
  if (k == 0) throw InvalidArgument("k must be positive");
  HitStats stats;
  std::unordered_set<std::string> prefetched;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < session.interactions.size(); ++i) {
    const auto& it = session.interactions[i];
    for (const auto& r : it.results) {
      if (missing && !scorer.index().ordinal(r.docid)) missing->push_back(r.docid);
      if (i == 0 || !seen.insert(r.docid).second) continue;
      ++stats.candidates;
      if (prefetched.count(r.docid)) ++stats.hits;
    }
    for (std::string& d : scorer.top_k_padded(it.query, k)) prefetched.insert(std::move(d));
  }
  return stats;
}

HitReport topical_prefetch_hits(const sessions::SessionLog& log, const retrieval::Bm25Scorer& scorer,
                                std::size_t k) {
  HitReport report;
  for (const auto& s : log.sessions) {
    const HitStats h = topical_hits(s, scorer, k, &report.missing);
    report.hits += h.hits;
    report.candidates += h.candidates;
    for (const auto& it : s.interactions)
      for (const auto& c : it.clicks)
        if (!scorer.index().ordinal(c.docid)) report.missing.push_back(c.docid);
  }
  std::sort(report.missing.begin(), report.missing.end());
  report.missing.erase(std::unique(report.missing.begin(), report.missing.end()), report.missing.end());
  return report;
}

std::size_t suggestion_matches(const sessions::SessionLog& log, const SuggestionProvider& provider) {
  std::size_t count = 0;
  for (const auto& s : log.sessions) {
    std::set<std::string> offered;
    for (const auto& it : s.interactions) {
      if (offered.count(trim(it.query))) ++count;
      for (const std::string& sug : provider.suggestions(it.query)) offered.insert(sug);
    }
  }
  return count;
}

}  // namespace lagsim::strategies
