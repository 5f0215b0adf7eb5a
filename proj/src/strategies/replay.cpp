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

#include "lagsim/strategies/replay.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "lagsim/strategies/hits.hpp"
#include "lagsim/util/error.hpp"
#include "steps.hpp"

namespace lagsim::strategies {

namespace detail {

std::optional<std::size_t> find_later_query(const sessions::Session& session, std::size_t after,
                                            const std::string& trimmed) {
  for (std::size_t j = after + 1; j < session.interactions.size(); ++j)
    if (trim(session.interactions[j].query) == trimmed) return j;
  return std::nullopt;
}

}  // namespace detail

namespace {

using detail::Step;
using ShipFn = std::function<void(const std::vector<sessions::ResultEntry>&)>;

SessionOutcome finish(const sessions::Session& session, std::size_t pages, std::size_t waits, double wait_s) {
  SessionOutcome out;
  out.earth_time_s = sessions::session_duration(session);
  out.pages_transferred = pages;
  out.blocking_waits = waits;
  out.wait_time_s = wait_s;
  out.mars_time_s = out.earth_time_s + wait_s;
  return out;
}

// Every new query blocks for one roundtrip and brings back its SERP plus
// whatever `ship` adds; a click on a page that is not local blocks too.
template <class Extra>
SessionOutcome replay_blocking(const sessions::Session& session, const sim::LinkConfig& link, bool ship_links,
                               Extra&& extra) {
  std::unordered_set<std::string> fetched_queries;
  std::unordered_set<std::string> local;
  std::size_t pages = 0;
  std::size_t waits = 0;
  const ShipFn ship = [&](const std::vector<sessions::ResultEntry>& results) {
    for (const auto& r : results)
      if (local.insert(r.docid).second) ++pages;
  };
  for (const Step& s : detail::build_steps(session)) {
    const auto& it = session.interactions[s.interaction];
    if (!s.click) {
      if (fetched_queries.count(it.query)) continue;
      if (extra.answers_locally(it.query)) {
        fetched_queries.insert(it.query);
        continue;
      }
      fetched_queries.insert(it.query);
      ++waits;
      ++pages;
      if (ship_links) ship(it.results);
      extra.after_fetch(s.interaction, ship, pages, local);
    } else {
      if (local.insert(it.clicks[*s.click].docid).second) {
        ++waits;
        ++pages;
      }
    }
  }
  return finish(session, pages, waits, static_cast<double>(waits) * link.roundtrip_s());
}

struct NoExtra {
  bool answers_locally(const std::string&) const { return false; }
  void after_fetch(std::size_t, const ShipFn&, std::size_t&, std::unordered_set<std::string>&) {}
};

}  // namespace

SessionOutcome replay_baseline(const sessions::Session& session, const sim::LinkConfig& link) {
  NoExtra none;
  return replay_blocking(session, link, false, none);
}

SessionOutcome replay_serp_prefetch(const sessions::Session& session, const sim::LinkConfig& link) {
  NoExtra none;
  return replay_blocking(session, link, true, none);
}

SessionOutcome replay_topical(const sessions::Session& session, const retrieval::Bm25Scorer& scorer, std::size_t k,
                              const sim::LinkConfig& link) {
  if (k == 0) throw InvalidArgument("k must be positive");
  struct Topical {
    const sessions::Session& session;
    const retrieval::Bm25Scorer& scorer;
    std::size_t k;
    bool answers_locally(const std::string&) const { return false; }
    void after_fetch(std::size_t i, const ShipFn&, std::size_t& pages, std::unordered_set<std::string>& local) {
      for (std::string& d : scorer.top_k_padded(session.interactions[i].query, k))
        if (local.insert(std::move(d)).second) ++pages;
    }
  } topical{session, scorer, k};
  SessionOutcome out = replay_blocking(session, link, true, topical);
  out.hits = topical_hits(session, scorer, k);
  return out;
}

SessionOutcome replay_suggestion(const sessions::Session& session, const SuggestionProvider& provider,
                                 const sim::LinkConfig& link) {
  struct Suggest {
    const sessions::Session& session;
    const SuggestionProvider& provider;
    std::unordered_set<std::string> delivered;
    std::unordered_set<std::string> asked;
    bool answers_locally(const std::string& q) const { return delivered.count(trim(q)) > 0; }
    void after_fetch(std::size_t i, const ShipFn& ship, std::size_t& pages, std::unordered_set<std::string>&) {
      asked.insert(session.interactions[i].query);
      for (const std::string& s : provider.suggestions(session.interactions[i].query)) {
        if (asked.count(s) || !delivered.insert(s).second) continue;
        ++pages;
        if (auto j = detail::find_later_query(session, i, s)) ship(session.interactions[*j].results);
      }
    }
  } suggest{session, provider, {}, {}};
  return replay_blocking(session, link, true, suggest);
}

SessionOutcome replay_static_cache(const sessions::Session& session, const retrieval::DocSet& cache,
                                   const sim::LinkConfig& link, bool combine_serp_prefetch) {
  const double rtt = link.roundtrip_s();
  std::unordered_set<std::string> sent_queries;
  std::unordered_map<std::string, double> arrival;  // uncached page -> Mars arrival time
  std::size_t pages = 0;
  std::size_t waits = 0;
  double shift = 0.0;
  for (const Step& s : detail::build_steps(session)) {
    const auto& it = session.interactions[s.interaction];
    const double m = s.t + shift;
    if (!s.click) {
      if (!sent_queries.insert(it.query).second) continue;
      ++pages;
      if (!combine_serp_prefetch) continue;
      for (const auto& r : it.results) {
        if (cache.count(r.docid) || arrival.count(r.docid)) continue;
        arrival.emplace(r.docid, m + rtt);
        ++pages;
      }
      continue;
    }
    const std::string& doc = it.clicks[*s.click].docid;
    if (cache.count(doc)) continue;
    if (auto a = arrival.find(doc); a != arrival.end()) {
      const double w = std::max(0.0, a->second - m);
      if (w > 0.0) {
        ++waits;
        shift += w;
      }
      continue;
    }
    ++waits;
    ++pages;
    shift += rtt;
    arrival.emplace(doc, m + rtt);
  }
  return finish(session, pages, waits, shift);
}

SessionOutcome replay(const sessions::Session& session, const sim::LinkConfig& link, const PolicyConfig& policy,
                      const ReplayContext& context) {
  policy.validate();
  switch (policy.kind) {
    case PolicyKind::Baseline: return replay_baseline(session, link);
    case PolicyKind::SerpPrefetch: return replay_serp_prefetch(session, link);
    case PolicyKind::TopicalPrefetch:
      if (!context.scorer) throw InvalidArgument("topical prefetch needs an index");
      return replay_topical(session, *context.scorer, *policy.k, link);
    case PolicyKind::SuggestionPrefetch: return replay_suggestion(session, *policy.suggestions, link);
    case PolicyKind::StaticCache:
      if (!context.cache) throw InvalidArgument("static cache needs a cache set");
      return replay_static_cache(session, *context.cache, link, policy.combine_serp_prefetch);
  }
  throw InvalidArgument("unknown policy");
}

std::vector<SessionOutcome> replay_log(const sessions::SessionLog& log, const sim::LinkConfig& link,
                                       const PolicyConfig& policy, const ReplayContext& context, unsigned threads) {
  policy.validate();
  std::vector<SessionOutcome> out(log.sessions.size());
  const std::size_t n = log.sessions.size();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = replay(log.sessions[i], link, policy, context);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) out[i] = replay(log.sessions[i], link, policy, context);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace lagsim::strategies
