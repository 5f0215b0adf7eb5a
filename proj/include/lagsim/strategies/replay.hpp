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
#include <string>
#include <vector>

#include "lagsim/retrieval/bm25.hpp"
#include "lagsim/retrieval/corpus.hpp"
#include "lagsim/sessions/log.hpp"
#include "lagsim/sim/link.hpp"
#include "lagsim/strategies/policy.hpp"

namespace lagsim::strategies {

// Closed-form replays. The simulated user follows the log; every blocking
// fetch shifts the rest of the session later by the time spent waiting.

SessionOutcome replay_baseline(const sessions::Session& session, const sim::LinkConfig& link);

SessionOutcome replay_serp_prefetch(const sessions::Session& session, const sim::LinkConfig& link);

/// Queries are answered locally from the cache and sent to Earth without
/// blocking. A click on an uncached page waits until that page arrives.
SessionOutcome replay_static_cache(const sessions::Session& session, const retrieval::DocSet& cache,
                                   const sim::LinkConfig& link, bool combine_serp_prefetch = true);

/// SERP pre-fetching plus the top-k BM25 documents for every new query.
/// `hits` is filled as in topical_prefetch_hits.
SessionOutcome replay_topical(const sessions::Session& session, const retrieval::Bm25Scorer& scorer,
                              std::size_t k, const sim::LinkConfig& link);

/// SERP pre-fetching plus one SERP page per suggestion of every fetched query.
/// A later query equal to a delivered suggestion (after trimming) is answered
/// locally; when it appears in the log its linked pages ship with the suggestion.
SessionOutcome replay_suggestion(const sessions::Session& session, const SuggestionProvider& provider,
                                 const sim::LinkConfig& link);

/// Inputs some policies need beyond the session itself. Not owned.
struct ReplayContext {
  const retrieval::DocSet* cache = nullptr;
  const retrieval::Bm25Scorer* scorer = nullptr;
};

/// Dispatches on policy.kind after validating it. Throws InvalidArgument when
/// the context lacks what the policy needs.
SessionOutcome replay(const sessions::Session& session, const sim::LinkConfig& link, const PolicyConfig& policy,
                      const ReplayContext& context = {});

/// The same policies as message passing on the event kernel: a Mars actor
/// replays the log and an Earth actor answers its requests.
SessionOutcome simulate(const sessions::Session& session, const sim::LinkConfig& link, const PolicyConfig& policy,
                        const ReplayContext& context = {});

/// Replays every session (in parallel when `threads` > 1). Order matches the log.
std::vector<SessionOutcome> replay_log(const sessions::SessionLog& log, const sim::LinkConfig& link,
                                       const PolicyConfig& policy, const ReplayContext& context = {},
                                       unsigned threads = 1);

}  // namespace lagsim::strategies
