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

#include <optional>
#include <unordered_set>

#include "lagsim/sim/kernel.hpp"
#include "lagsim/strategies/hits.hpp"
#include "lagsim/strategies/replay.hpp"
#include "lagsim/util/error.hpp"
#include "steps.hpp"

namespace lagsim::strategies {

namespace {

using sim::Endpoint;
using sim::SimTime;

struct Msg {
  enum class Type { Step, QueryRequest, PageRequest, Response };
  Type type = Type::Step;
  std::size_t index = 0;  // step for Step, interaction for QueryRequest
  std::string doc;
  std::vector<std::string> docs;
  std::vector<std::string> serps;
  std::vector<std::string> suggestions;
};

using Kernel = sim::Kernel<Msg>;

class Earth {
 public:
  Earth(const sessions::Session& session, const PolicyConfig& policy, const ReplayContext& ctx)
      : session_(session), policy_(policy), ctx_(ctx) {}

  std::size_t pages() const { return pages_; }

  void handle(Kernel& k, const Kernel::Event& ev) {
    Msg reply;
    reply.type = Msg::Type::Response;
    if (ev.payload.type == Msg::Type::PageRequest) {
      sent_.insert(ev.payload.doc);
      reply.docs.push_back(ev.payload.doc);
      ++pages_;
    } else {
      answer_query(ev.payload.index, reply);
    }
    k.transmit(std::move(reply), Endpoint::Earth, Endpoint::Mars);
  }

 private:
  bool ships_links() const {
    return policy_.kind != PolicyKind::Baseline &&
           (policy_.kind != PolicyKind::StaticCache || policy_.combine_serp_prefetch);
  }

  bool cached(const std::string& doc) const { return ctx_.cache && ctx_.cache->count(doc); }

  void ship(const std::string& doc, Msg& reply) {
    if (cached(doc) || !sent_.insert(doc).second) return;
    reply.docs.push_back(doc);
    ++pages_;
  }

  void answer_query(std::size_t i, Msg& reply) {
    const auto& it = session_.interactions[i];
    served_.insert(it.query);
    reply.serps.push_back(it.query);
    ++pages_;
    if (ships_links())
      for (const auto& r : it.results) ship(r.docid, reply);
    if (policy_.kind == PolicyKind::TopicalPrefetch)
      for (const std::string& d : ctx_.scorer->top_k_padded(it.query, *policy_.k)) ship(d, reply);
    if (policy_.kind == PolicyKind::SuggestionPrefetch) {
      for (const std::string& s : policy_.suggestions->suggestions(it.query)) {
        if (served_.count(s) || !suggested_.insert(s).second) continue;
        reply.suggestions.push_back(s);
        ++pages_;
        if (auto j = detail::find_later_query(session_, i, s))
          for (const auto& r : session_.interactions[*j].results) ship(r.docid, reply);
      }
    }
  }

  const sessions::Session& session_;
  const PolicyConfig& policy_;
  const ReplayContext& ctx_;
  std::unordered_set<std::string> sent_;
  std::unordered_set<std::string> served_;
  std::unordered_set<std::string> suggested_;
  std::size_t pages_ = 0;
};

class Mars {
 public:
  Mars(const sessions::Session& session, const PolicyConfig& policy, const ReplayContext& ctx)
      : session_(session), policy_(policy), ctx_(ctx), steps_(detail::build_steps(session)) {}

  double shift() const { return shift_; }
  std::size_t waits() const { return waits_; }
  bool done() const { return cursor_ >= steps_.size(); }

  void start(Kernel& k) {
    if (!steps_.empty()) schedule_step(k);
  }

  void handle(Kernel& k, const Kernel::Event& ev) {
    if (ev.payload.type == Msg::Type::Step) {
      act(k);
    } else {
      receive(k, ev.payload);
    }
  }

 private:
  bool cache_policy() const { return policy_.kind == PolicyKind::StaticCache; }

  void schedule_step(Kernel& k) {
    Msg m;
    m.index = cursor_;
    k.schedule(SimTime{steps_[cursor_].t + shift_}, Endpoint::Mars, std::move(m));
  }

  void advance(Kernel& k) {
    ++cursor_;
    if (!done()) schedule_step(k);
  }

  void block(Kernel& k, std::optional<std::string> serp, std::optional<std::string> doc, bool counted) {
    wait_serp_ = std::move(serp);
    wait_doc_ = std::move(doc);
    blocked_since_ = k.now();
    if (counted) ++waits_;
    count_if_positive_ = !counted;
  }

  void act(Kernel& k) {
    const detail::Step& s = steps_[cursor_];
    const auto& it = session_.interactions[s.interaction];
    if (!s.click) {
      const std::string& q = it.query;
      if (serps_.count(q) || requested_.count(q) || suggested_.count(trim(q))) return advance(k);
      requested_.insert(q);
      Msg req;
      req.type = Msg::Type::QueryRequest;
      req.index = s.interaction;
      k.transmit(std::move(req), Endpoint::Mars, Endpoint::Earth);
      if (cache_policy()) {
        if (policy_.combine_serp_prefetch)
          for (const auto& r : it.results) expected_.insert(r.docid);
        return advance(k);
      }
      return block(k, q, std::nullopt, true);
    }
    const std::string& doc = it.clicks[*s.click].docid;
    if ((ctx_.cache && ctx_.cache->count(doc)) || local_.count(doc)) return advance(k);
    if (expected_.count(doc)) return block(k, std::nullopt, doc, false);
    Msg req;
    req.type = Msg::Type::PageRequest;
    req.doc = doc;
    k.transmit(std::move(req), Endpoint::Mars, Endpoint::Earth);
    block(k, std::nullopt, doc, true);
  }

  void receive(Kernel& k, const Msg& m) {
    local_.insert(m.docs.begin(), m.docs.end());
    serps_.insert(m.serps.begin(), m.serps.end());
    suggested_.insert(m.suggestions.begin(), m.suggestions.end());
    const bool satisfied = (wait_serp_ && serps_.count(*wait_serp_)) || (wait_doc_ && local_.count(*wait_doc_));
    if (!satisfied) return;
    const double waited = k.now() - blocked_since_;
    if (count_if_positive_ && waited > 0.0) ++waits_;
    shift_ += waited;
    wait_serp_.reset();
    wait_doc_.reset();
    advance(k);
  }

  const sessions::Session& session_;
  const PolicyConfig& policy_;
  const ReplayContext& ctx_;
  std::vector<detail::Step> steps_;
  std::size_t cursor_ = 0;
  double shift_ = 0.0;
  std::size_t waits_ = 0;
  std::optional<std::string> wait_serp_;
  std::optional<std::string> wait_doc_;
  SimTime blocked_since_;
  bool count_if_positive_ = false;
  std::unordered_set<std::string> local_;
  std::unordered_set<std::string> serps_;
  std::unordered_set<std::string> requested_;
  std::unordered_set<std::string> suggested_;
  std::unordered_set<std::string> expected_;
};

}  // namespace

SessionOutcome simulate(const sessions::Session& session, const sim::LinkConfig& link, const PolicyConfig& policy,
                        const ReplayContext& context) {
  policy.validate();
  if (policy.kind == PolicyKind::TopicalPrefetch && !context.scorer)
    throw InvalidArgument("topical prefetch needs an index");
  if (policy.kind == PolicyKind::StaticCache && !context.cache)
    throw InvalidArgument("static cache needs a cache set");
  // Only the static cache policy consults the cache; keep other policies honest.
  ReplayContext ctx = context;
  if (policy.kind != PolicyKind::StaticCache) ctx.cache = nullptr;

  Kernel kernel(link);
  Earth earth(session, policy, ctx);
  Mars mars(session, policy, ctx);
  kernel.on(Endpoint::Earth, [&](Kernel& k, const Kernel::Event& ev) { earth.handle(k, ev); });
  kernel.on(Endpoint::Mars, [&](Kernel& k, const Kernel::Event& ev) { mars.handle(k, ev); });
  mars.start(kernel);
  kernel.run();
  if (!mars.done()) throw Error("event replay stalled before the end of the session");

  SessionOutcome out;
  out.earth_time_s = sessions::session_duration(session);
  out.wait_time_s = mars.shift();
  out.mars_time_s = out.earth_time_s + out.wait_time_s;
  out.pages_transferred = earth.pages();
  out.blocking_waits = mars.waits();
  if (policy.kind == PolicyKind::TopicalPrefetch) out.hits = topical_hits(session, *context.scorer, *policy.k);
  return out;
}

}  // namespace lagsim::strategies
