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

#include "lagsim/recall/scenario.hpp"

#include <algorithm>
#include <deque>

#include "lagsim/sim/kernel.hpp"
#include "lagsim/util/error.hpp"

namespace lagsim::recall {

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::EarthTAR: return "earth";
    case ScenarioKind::EarthTARLatency: return "earth-lat";
    case ScenarioKind::MarsTARWithCache: return "mars-cache";
    case ScenarioKind::MarsTARNoCache: return "mars-nocache";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  for (ScenarioKind k : {ScenarioKind::EarthTAR, ScenarioKind::EarthTARLatency, ScenarioKind::MarsTARWithCache,
                         ScenarioKind::MarsTARNoCache}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidArgument("unknown scenario '" + std::string(name) + "'");
}

void ScenarioConfig::validate() const {
  if (!(link.one_way_delay_s >= 0.0) || !std::isfinite(link.one_way_delay_s))
    throw InvalidArgument("one-way delay must be finite and non-negative");
  const bool with_cache = kind == ScenarioKind::MarsTARWithCache;
  if (with_cache && !cache_seed) throw InvalidArgument("MarsTARWithCache requires a cache seed");
  if (!with_cache && cache_seed) throw InvalidArgument("a cache seed is only meaningful for MarsTARWithCache");
  if (stop.time_budget_s && !(*stop.time_budget_s >= 0.0)) throw InvalidArgument("time budget must be >= 0");
  if (stop.recall_target && !(*stop.recall_target > 0.0 && *stop.recall_target <= 1.0))
    throw InvalidArgument("recall target must be in (0, 1]");
}

std::optional<double> GainCurve::time_to_recall(double recall) const {
  for (const GainPoint& p : points)
    if (p.recall >= recall) return p.time_s;
  return std::nullopt;
}

double GainCurve::recall_at(double t) const {
  double r = 0.0;
  for (const GainPoint& p : points) {
    if (p.time_s > t) break;
    r = p.recall;
  }
  return r;
}

namespace {

using sim::Endpoint;
using sim::SimTime;

struct Msg {
  enum class Type { Start, Judged, Decide, Query, Judgments, Shipment, Timer };
  Type type = Type::Start;
  std::uint32_t doc = 0;
  std::vector<std::uint32_t> docs;
  std::vector<std::uint8_t> relevant;
  /// Earth's ranking of every document it believes Mars holds unjudged.
  std::vector<std::uint32_t> ranking;
  std::size_t version = 0;
  /// Mars's next batch size, sent with every request.
  std::size_t batch = 1;
  double sent_at = 0.0;
  std::uint64_t generation = 0;
};

using Kernel = sim::Kernel<Msg>;

Msg make(Msg::Type type) {
  Msg m;
  m.type = type;
  return m;
}

struct Env {
  const ScenarioConfig& cfg;
  const FeatureStore& store;
  std::string seed_text;
  std::vector<bool> relevant;
  std::size_t relevant_total = 0;
  std::size_t found = 0;
  std::size_t shipped = 0;
  GainCurve curve;

  /// Records one judgment; stops the kernel when a stop rule fires.
  void record(Kernel& k, std::uint32_t doc) {
    if (cfg.stop.time_budget_s && k.now().seconds > *cfg.stop.time_budget_s) {
      k.stop();
      return;
    }
    if (relevant[doc]) ++found;
    ++curve.docs_judged;
    const double recall = static_cast<double>(found) / static_cast<double>(relevant_total);
    curve.points.push_back(GainPoint{k.now().seconds, recall, shipped});
    if (cfg.stop.recall_target && recall >= *cfg.stop.recall_target) k.stop();
  }
};

/// Scores every document once per model version and ranks subsets by them.
std::vector<std::uint32_t> rank_by(const std::vector<double>& scores, std::vector<std::uint32_t> cands,
                                   std::size_t n) {
  n = std::min(n, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(n), cands.end(),
                    [&](std::uint32_t a, std::uint32_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  cands.resize(n);
  return cands;
}

// EarthTAR and EarthTARLatency: Earth runs the only CAL and answers each
// batch of judgments with the next batch; the searcher idles in between.
void run_remote_batches(Kernel& kernel, Env& env) {
  CalState cal(env.store, env.seed_text, env.cfg.seed, Site::Earth);
  std::deque<std::uint32_t> queue;
  Msg report = make(Msg::Type::Judgments);

  kernel.on(Endpoint::Earth, [&](Kernel& k, const Kernel::Event& ev) {
    for (std::size_t i = 0; i < ev.payload.docs.size(); ++i) cal.judge(ev.payload.docs[i], ev.payload.relevant[i]);
    Msg batch = make(Msg::Type::Shipment);
    batch.docs = cal.step(unjudged(cal, env.store));
    env.shipped += batch.docs.size();
    k.transmit(std::move(batch), Endpoint::Earth, Endpoint::Mars);
  });

  kernel.on(Endpoint::Mars, [&](Kernel& k, const Kernel::Event& ev) {
    switch (ev.payload.type) {
      case Msg::Type::Start:
        k.transmit(make(Msg::Type::Query), Endpoint::Mars, Endpoint::Earth);
        return;
      case Msg::Type::Shipment:
        queue.assign(ev.payload.docs.begin(), ev.payload.docs.end());
        break;
      case Msg::Type::Judged:
        report.docs.push_back(ev.payload.doc);
        report.relevant.push_back(env.relevant[ev.payload.doc]);
        env.record(k, ev.payload.doc);
        if (k.stopped()) return;
        break;
      default:
        return;
    }
    if (queue.empty()) {
      if (!report.docs.empty()) k.transmit(std::exchange(report, make(Msg::Type::Judgments)), Endpoint::Mars,
                                           Endpoint::Earth);
      return;
    }
    Msg judged = make(Msg::Type::Judged);
    judged.doc = queue.front();
    queue.pop_front();
    k.schedule(k.now() + reading_time(env.store.words(judged.doc)), Endpoint::Mars, std::move(judged));
  });

  kernel.schedule(SimTime{0.0}, Endpoint::Mars, make(Msg::Type::Start));
  kernel.run();
}

// MarsTAR: a CAL on each planet. Mars judges continuously from its local
// pool; Earth retrains on Martian judgments and answers each report with as
// many of its best documents as Mars's next batch holds.
class MarsTar {
 public:
  MarsTar(Env& env, const std::vector<bool>& cache)
      : env_(env),
        delay_(env.cfg.link.one_way_delay_s),
        earth_(env.store, env.seed_text, env.cfg.seed, Site::Earth),
        mars_(env.store, env.seed_text, env.cfg.seed, Site::Mars),
        earth_on_mars_(cache),
        arrival_(cache.size(), 0.0),
        scores_(cache.size(), 0.0),
        mars_has_(cache) {
    for (std::uint32_t d = 0; d < cache.size(); ++d)
      if (cache[d]) ship_order_.push_back(d);
  }

  void run(Kernel& kernel) {
    kernel.on(Endpoint::Earth, [this](Kernel& k, const Kernel::Event& ev) { on_earth(k, ev.payload); });
    kernel.on(Endpoint::Mars, [this](Kernel& k, const Kernel::Event& ev) { on_mars(k, ev.payload); });
    kernel.schedule(SimTime{0.0}, Endpoint::Mars, make(Msg::Type::Start));
    kernel.run();
  }

 private:
  // ---- Earth -------------------------------------------------------------

  void on_earth(Kernel& k, const Msg& m) {
    switch (m.type) {
      case Msg::Type::Judgments:
        for (std::size_t i = 0; i < m.docs.size(); ++i) earth_.judge(m.docs[i], m.relevant[i]);
        last_report_ = m.sent_at;
        [[fallthrough]];
      case Msg::Type::Query: {
        wanted_ = m.batch;
        const std::vector<std::uint32_t> pool = unjudged(earth_, env_.store);
        if (!pool.empty()) {
          earth_.train(pool);
          for (std::uint32_t d = 0; d < scores_.size(); ++d) scores_[d] = earth_.score(d);
        }
        ship(k, wanted_);
        arm_timer(k);
        return;
      }
      case Msg::Type::Timer:
        if (m.generation != generation_) return;
        ship(k, wanted_);
        arm_timer(k);
        return;
      default:
        return;
    }
  }

  std::vector<std::uint32_t> earth_candidates() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 0; d < earth_on_mars_.size(); ++d)
      if (!earth_on_mars_[d] && !earth_.judged(d)) out.push_back(d);
    return out;
  }

  void ship(Kernel& k, std::size_t n) {
    Msg m = make(Msg::Type::Shipment);
    m.docs = rank_by(scores_, earth_candidates(), n);
    const double arrives = k.now().seconds + delay_;
    for (std::uint32_t d : m.docs) {
      earth_on_mars_[d] = true;
      arrival_[d] = arrives;
      ship_order_.push_back(d);
    }
    env_.shipped += m.docs.size();
    std::vector<std::uint32_t> held;
    for (std::uint32_t d : ship_order_)
      if (!earth_.judged(d)) held.push_back(d);
    m.ranking = rank_by(scores_, std::move(held), ship_order_.size());
    m.version = earth_.trained_on();
    k.transmit(std::move(m), Endpoint::Earth, Endpoint::Mars);
  }

  void arm_timer(Kernel& k) {
    ++generation_;
    if (delay_ <= 0.0 || earth_candidates().empty()) return;
    double fire = 0.0;
    if (env_.cfg.cadence == ShippingCadence::RoundtripHeartbeat) {
      fire = k.now().seconds + 2.0 * delay_;
    } else {
      // When Mars will have read everything it holds, if it reads non-stop.
      double busy = last_report_;
      for (std::uint32_t d : ship_order_)
        if (!earth_.judged(d)) busy = std::max(busy, arrival_[d]) + reading_time(env_.store.words(d));
      fire = std::max(k.now().seconds, busy - delay_);
    }
    Msg t = make(Msg::Type::Timer);
    t.generation = generation_;
    k.schedule(SimTime{fire}, Endpoint::Earth, std::move(t));
  }

  // ---- Mars --------------------------------------------------------------

  void on_mars(Kernel& k, const Msg& m) {
    switch (m.type) {
      case Msg::Type::Start:
        k.transmit(make(Msg::Type::Query), Endpoint::Mars, Endpoint::Earth);
        schedule_decide(k);
        return;
      case Msg::Type::Shipment:
        for (std::uint32_t d : m.docs) mars_has_[d] = true;
        ranking_ = m.ranking;
        ranking_version_ = m.version;
        if (idle_) {
          idle_ = false;
          schedule_decide(k);
        }
        return;
      case Msg::Type::Decide:
        decide_pending_ = false;
        decide(k);
        return;
      case Msg::Type::Judged: {
        const bool rel = env_.relevant[m.doc];
        mars_.judge(m.doc, rel);
        report_.docs.push_back(m.doc);
        report_.relevant.push_back(rel);
        env_.record(k, m.doc);
        if (k.stopped()) return;
        if (!queue_.empty()) return judge_next(k);
        report_.sent_at = k.now().seconds;
        report_.batch = mars_.batch_size();
        k.transmit(std::exchange(report_, make(Msg::Type::Judgments)), Endpoint::Mars, Endpoint::Earth);
        schedule_decide(k);
        return;
      }
      default:
        return;
    }
  }

  void schedule_decide(Kernel& k) {
    if (decide_pending_) return;
    decide_pending_ = true;
    k.schedule(k.now(), Endpoint::Mars, make(Msg::Type::Decide));
  }

  void decide(Kernel& k) {
    // Let every delivery due at this instant land first.
    if (k.pending_now()) return schedule_decide(k);
    std::vector<std::uint32_t> pool;
    for (std::uint32_t d = 0; d < mars_has_.size(); ++d)
      if (mars_has_[d] && !mars_.judged(d)) pool.push_back(d);
    if (pool.empty()) {
      idle_ = true;
      return;
    }
    const std::size_t b = mars_.batch_size();
    if (ranking_version_ == mars_.judged_count()) {
      // Earth's model has seen every judgment: rank with it.
      for (std::uint32_t d : ranking_) {
        if (queue_.size() == b) break;
        if (mars_has_[d] && !mars_.judged(d)) queue_.push_back(d);
      }
    } else {
      mars_.train(pool);
      for (std::uint32_t d : mars_.top(pool, b)) queue_.push_back(d);
    }
    // A batch cut short by a thin pool does not advance the schedule.
    if (queue_.size() == b) mars_.grow_batch();
    judge_next(k);
  }

  void judge_next(Kernel& k) {
    Msg j = make(Msg::Type::Judged);
    j.doc = queue_.front();
    queue_.pop_front();
    k.schedule(k.now() + reading_time(env_.store.words(j.doc)), Endpoint::Mars, std::move(j));
  }

  Env& env_;
  double delay_;
  CalState earth_;
  CalState mars_;
  // Earth's view.
  std::vector<bool> earth_on_mars_;
  std::vector<double> arrival_;
  std::vector<std::uint32_t> ship_order_;
  std::vector<double> scores_;
  double last_report_ = 0.0;
  std::size_t wanted_ = 1;
  std::uint64_t generation_ = 0;
  // Mars's view.
  std::vector<bool> mars_has_;
  std::vector<std::uint32_t> ranking_;
  std::size_t ranking_version_ = static_cast<std::size_t>(-1);
  std::deque<std::uint32_t> queue_;
  Msg report_ = make(Msg::Type::Judgments);
  bool idle_ = false;
  bool decide_pending_ = false;
};

}  // namespace

GainCurve run_scenario(const ScenarioConfig& config, const retrieval::Corpus& corpus, const FeatureStore& store,
                       std::string_view topic, const retrieval::Qrels& qrels) {
  config.validate();
  const retrieval::Topic* t = corpus.topic(topic);
  if (!t) throw InvalidArgument("unknown topic '" + std::string(topic) + "'");
  if (store.size() != corpus.documents.size()) throw InvalidArgument("feature store does not match the corpus");

  Env env{config, store, t->description, std::vector<bool>(store.size(), false), 0, 0, 0, {}};
  if (auto q = qrels.find(std::string(topic)); q != qrels.end()) {
    for (const auto& [docid, grade] : q->second) {
      if (grade <= 0) continue;
      ++env.relevant_total;
      if (auto ord = store.ordinal(docid)) env.relevant[*ord] = true;
    }
  }
  if (env.relevant_total == 0) throw InvalidArgument("topic '" + std::string(topic) + "' has no relevant documents");
  env.curve.topic = std::string(topic);
  env.curve.relevant_total = env.relevant_total;

  const bool earth_only = config.kind == ScenarioKind::EarthTAR;
  Kernel kernel(earth_only ? sim::LinkConfig::earth_local() : config.link);
  if (config.kind == ScenarioKind::EarthTAR || config.kind == ScenarioKind::EarthTARLatency) {
    run_remote_batches(kernel, env);
  } else {
    std::vector<bool> cache(store.size(), false);
    if (config.cache_seed) {
      for (const std::string& docid : *config.cache_seed) {
        auto ord = store.ordinal(docid);
        if (!ord) throw InvalidArgument("cache seed names unknown document '" + docid + "'");
        cache[*ord] = true;
      }
    }
    MarsTar(env, cache).run(kernel);
  }
  env.curve.docs_shipped = env.shipped;
  return std::move(env.curve);
}

GainCurve run_scenario(const ScenarioConfig& config, const retrieval::Corpus& corpus, std::string_view topic,
                       const retrieval::Qrels& qrels) {
  const FeatureStore store(corpus);
  return run_scenario(config, corpus, store, topic, qrels);
}

}  // namespace lagsim::recall
