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
#include <optional>
#include <string>
#include <vector>

#include "lagsim/retrieval/bm25.hpp"
#include "lagsim/sessions/log.hpp"
#include "lagsim/strategies/policy.hpp"

namespace lagsim::strategies {

struct HitReport {
  std::size_t hits = 0;
  std::size_t candidates = 0;
  /// Distinct log docids the index does not contain; they count as misses.
  std::vector<std::string> missing;

  /// Absent when there are no candidates.
  std::optional<double> ratio() const;
};

/// Per session: before each query's own top-k is added, every docid on its
/// SERP not yet seen after the first query is a candidate, and a hit when an
/// earlier query already prefetched it.
HitStats topical_hits(const sessions::Session& session, const retrieval::Bm25Scorer& scorer, std::size_t k,
                      std::vector<std::string>* missing = nullptr);

HitReport topical_prefetch_hits(const sessions::SessionLog& log, const retrieval::Bm25Scorer& scorer,
                                std::size_t k);

/// (session, query) pairs whose trimmed query equals a suggestion for an
/// earlier query of the same session.
std::size_t suggestion_matches(const sessions::SessionLog& log, const SuggestionProvider& provider);

}  // namespace lagsim::strategies
