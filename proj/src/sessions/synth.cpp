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

#include "lagsim/sessions/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "lagsim/util/error.hpp"

namespace lagsim::sessions {
namespace {

std::string padded_id(char prefix, std::size_t n, int width) {
  std::string digits = std::to_string(n);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return prefix + digits;
}


std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> random_serp(const SynthConfig& cfg, const std::string& query) {
  std::mt19937_64 rng(fnv1a(query) ^ cfg.seed);
  const std::size_t n = std::min(cfg.serp_size, cfg.corpus.size());
  std::vector<std::string> out;
  std::unordered_set<std::size_t> used;
  std::uniform_int_distribution<std::size_t> pick(0, cfg.corpus.size() - 1);
  while (out.size() < n) {
    const std::size_t i = pick(rng);
    if (used.insert(i).second) out.push_back(cfg.corpus[i].docid);
  }
  return out;
}

double exponential(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0.0;
  return std::exponential_distribution<double>(1.0 / mean)(rng);
}

std::size_t poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  return static_cast<std::size_t>(std::poisson_distribution<long>(mean)(rng));
}

}  // namespace

SessionLog synthesize_log(const SynthConfig& cfg) {
  std::size_t pool_size = 0;
  for (const auto& group : cfg.query_pool) pool_size += group.size();
  if (pool_size == 0) throw InvalidArgument("synthesize_log: empty query pool");
  if (cfg.corpus.empty()) throw InvalidArgument("synthesize_log: empty corpus");
  if (cfg.mean_queries_per_session < 1.0)
    throw InvalidArgument("synthesize_log: sessions need at least one query on average");

  std::vector<const std::vector<std::string>*> groups;
  for (const auto& group : cfg.query_pool)
    if (!group.empty()) groups.push_back(&group);

  std::unordered_map<std::string, double> quality;
  for (const SynthDocument& d : cfg.corpus) quality.emplace(d.docid, d.quality);

  std::unordered_map<std::string, std::vector<std::string>> serp_cache;
  auto serp_for = [&](const std::string& q) -> const std::vector<std::string>& {
    auto it = serp_cache.find(q);
    if (it != serp_cache.end()) return it->second;
    std::vector<std::string> docs = cfg.serp ? cfg.serp(q) : random_serp(cfg, q);
    if (docs.size() > cfg.serp_size) docs.resize(cfg.serp_size);
    return serp_cache.emplace(q, std::move(docs)).first->second;
  };

  std::mt19937_64 rng(cfg.seed);
  const double clicks_per_query = cfg.mean_clicks_per_session / cfg.mean_queries_per_session;
  const int width = static_cast<int>(std::to_string(cfg.n_sessions).size());

  SessionLog log;
  log.source = "synthetic seed=" + std::to_string(cfg.seed);
  log.sessions.reserve(cfg.n_sessions);
  for (std::size_t s = 0; s < cfg.n_sessions; ++s) {
    const auto& group = *groups[std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng)];
    const std::size_t n_queries = 1 + poisson(rng, cfg.mean_queries_per_session - 1.0);

    Session session;
    const std::string id = padded_id('s', s + 1, width);
    session.id = id;
    double t = exponential(rng, cfg.mean_think_time_s);
    for (std::size_t q = 0; q < n_queries; ++q) {
      Interaction it;
      it.num = static_cast<int>(q + 1);
      it.starttime_s = t;
      it.kind = q == 0 ? InteractionKind::Initial : InteractionKind::Reformulate;
      it.query = group[std::uniform_int_distribution<std::size_t>(0, group.size() - 1)(rng)];
      const auto& docs = serp_for(it.query);
      for (std::size_t r = 0; r < docs.size(); ++r) {
        ResultEntry e;
        e.rank = static_cast<int>(r + 1);
        e.docid = docs[r];
        e.url = "http://example.org/" + docs[r];
        it.results.push_back(std::move(e));
      }

      const std::size_t n_clicks = std::min(poisson(rng, clicks_per_query), it.results.size());
      std::vector<double> weight(it.results.size());
      for (std::size_t r = 0; r < weight.size(); ++r) {
        auto qit = quality.find(it.results[r].docid);
        const double qv = qit == quality.end() ? 0.5 : qit->second;
        weight[r] = std::pow(static_cast<double>(r + 1), -cfg.click_model.position_decay) *
                    std::exp(cfg.click_model.quality_bias * qv);
      }
      double clock = t;
      for (std::size_t c = 0; c < n_clicks; ++c) {
        std::discrete_distribution<std::size_t> pick(weight.begin(), weight.end());
        const std::size_t r = pick(rng);
        weight[r] = 0.0;
        Click click;
        click.docid = it.results[r].docid;
        click.starttime_s = clock + exponential(rng, cfg.mean_click_delay_s);
        click.endtime_s = click.starttime_s + exponential(rng, cfg.mean_dwell_s);
        clock = *click.endtime_s;
        it.clicks.push_back(std::move(click));
      }
      session.interactions.push_back(std::move(it));
      t = clock + exponential(rng, cfg.mean_query_gap_s);
    }
    log.sessions.push_back(std::move(session));
  }
  return log;
}

}  // namespace lagsim::sessions
