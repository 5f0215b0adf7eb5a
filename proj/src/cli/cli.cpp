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

#include "lagsim/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "lagsim/metrics/ratios.hpp"
#include "lagsim/metrics/report.hpp"
#include "lagsim/recall/scenario.hpp"
#include "lagsim/retrieval/bm25.hpp"
#include "lagsim/retrieval/quality.hpp"
#include "lagsim/sessions/canonical.hpp"
#include "lagsim/sessions/synth.hpp"
#include "lagsim/sessions/xml.hpp"
#include "lagsim/strategies/hits.hpp"
#include "lagsim/strategies/replay.hpp"
#include "lagsim/util/csv.hpp"
#include "lagsim/util/error.hpp"
#include "lagsim/util/io.hpp"
#include "run.hpp"

namespace lagsim::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 42;

sessions::SessionLog load_log(Run& run, const std::string& path) {
  const std::string bytes = run.read_input(path);
  const auto first = bytes.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
  sessions::SessionLog log = (first != std::string::npos && bytes[first] == '<') ? sessions::parse_xml_log(bytes)
                                                                                  : sessions::read_canonical(bytes);
  if (log.source.empty()) log.source = path;
  return log;
}

retrieval::Corpus load_corpus(Run& run, const std::string& path) {
  return retrieval::read_corpus_jsonl(run.read_input(path));
}

std::vector<std::string> read_docid_list(Run& run, const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(run.read_input(path));
  std::string line;
  while (std::getline(in, line)) {
    const std::string id = strategies::trim(line);
    if (!id.empty() && id[0] != '#') out.push_back(id);
  }
  return out;
}

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !(v >= 0.0 && v <= 1.0))
      throw UsageError("--fractions", "'" + item + "' is not a fraction in [0, 1]");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--fractions", "no fractions given");
  return out;
}

retrieval::QualityModel train_static_ranker(const retrieval::Corpus& corpus, std::size_t negatives,
                                            std::uint64_t seed) {
  const auto set = retrieval::quality_training_set(corpus, negatives, seed);
  if (set.positives.empty() || set.negatives.empty())
    throw Error("the corpus needs documents judged relevant and documents judged spam or non-relevant");
  retrieval::QualityParams params;
  params.seed = seed;
  return retrieval::train_quality(set.positives, set.negatives, params);
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

// ---- gen-corpus -------------------------------------------------------------

struct GenCorpusOpts {
  retrieval::CorpusGenConfig cfg;
  std::string out;
};

void gen_corpus(const GenCorpusOpts& o) {
  Run run("gen-corpus", o.out);
  run.set_seed(o.cfg.seed);
  run.config() = {{"docs", o.cfg.n_docs},
                  {"topics", o.cfg.n_topics},
                  {"prevalence", o.cfg.prevalence},
                  {"spam", o.cfg.spam_fraction},
                  {"judged_nonrelevant", o.cfg.judged_nonrelevant_fraction},
                  {"quality_signal", o.cfg.quality_signal}};
  const retrieval::Corpus corpus = retrieval::generate_corpus(o.cfg);
  run.emit("corpus.jsonl", retrieval::write_corpus_jsonl(corpus));
  run.emit("qrels.txt", retrieval::write_qrels(retrieval::qrels_from_corpus(corpus)));
  run.commit();
}

// ---- gen-log ----------------------------------------------------------------

struct GenLogOpts {
  std::string corpus;
  std::size_t sessions = 200;
  std::size_t queries_per_topic = 20;
  std::size_t serp_size = 10;
  double position_decay = 1.0;
  double quality_bias = 3.0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

void gen_log(const GenLogOpts& o) {
  Run run("gen-log", o.out);
  run.set_seed(o.seed);
  run.config() = {{"corpus", o.corpus},
                  {"sessions", o.sessions},
                  {"queries_per_topic", o.queries_per_topic},
                  {"serp_size", o.serp_size},
                  {"position_decay", o.position_decay},
                  {"quality_bias", o.quality_bias}};
  const retrieval::Corpus corpus = load_corpus(run, o.corpus);
  const retrieval::Index index = retrieval::Index::build(corpus);
  const retrieval::Bm25Scorer scorer(index);

  sessions::SynthConfig cfg;
  cfg.n_sessions = o.sessions;
  cfg.query_pool = retrieval::topic_queries(corpus, o.queries_per_topic, o.seed);
  for (const auto& d : corpus.documents) cfg.corpus.push_back({d.docid, d.quality.value_or(0.5)});
  cfg.serp = [&](const std::string& q) { return scorer.top_k_padded(q, o.serp_size); };
  cfg.serp_size = o.serp_size;
  cfg.click_model.position_decay = o.position_decay;
  cfg.click_model.quality_bias = o.quality_bias;
  cfg.seed = o.seed;
  sessions::SessionLog log = sessions::synthesize_log(cfg);
  log.source = "synthetic";

  // Suggestions: the next three queries of the same group.
  json suggestions = json::object();
  for (const auto& group : cfg.query_pool) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      json list = json::array();
      for (std::size_t j = 1; j <= 3 && j < group.size(); ++j) list.push_back(group[(i + j) % group.size()]);
      suggestions[group[i]] = std::move(list);
    }
  }
  run.emit("log.json", sessions::write_canonical(log));
  run.emit("suggestions.json", suggestions.dump(1, '\t') + "\n");
  run.commit();
}

// ---- sessions-sim -----------------------------------------------------------

struct SessionsSimOpts {
  std::string log;
  std::string policy;
  double rtt_min = 8.0;
  std::optional<std::size_t> k;
  std::optional<double> cache_fraction;
  std::string corpus;
  std::string cache_list;
  std::string suggestions;
  bool no_serp_prefetch = false;
  std::size_t negatives = 3000;
  std::string engine = "closed";
  std::string format = "csv";
  unsigned threads = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

void sessions_sim(const SessionsSimOpts& o) {
  strategies::PolicyConfig policy;
  try {
    policy.kind = strategies::policy_kind_from_string(o.policy);
  } catch (const InvalidArgument& e) {
    throw UsageError("--policy", e.what());
  }
  const bool topical = policy.kind == strategies::PolicyKind::TopicalPrefetch;
  const bool cache = policy.kind == strategies::PolicyKind::StaticCache;
  const bool suggest = policy.kind == strategies::PolicyKind::SuggestionPrefetch;
  if (topical != o.k.has_value()) throw UsageError("--k", topical ? "required by --policy topical" : "only valid with --policy topical");
  if (cache && !o.cache_fraction && o.cache_list.empty())
    throw UsageError("--cache-fraction", "--policy cache needs --cache-fraction (with --corpus) or --cache-list");
  if (!cache && (o.cache_fraction || !o.cache_list.empty()))
    throw UsageError(o.cache_fraction ? "--cache-fraction" : "--cache-list", "only valid with --policy cache");
  if (o.cache_fraction && o.corpus.empty()) throw UsageError("--corpus", "required by --cache-fraction");
  if (topical && o.corpus.empty()) throw UsageError("--corpus", "required by --policy topical");
  if (suggest != !o.suggestions.empty())
    throw UsageError("--suggestions", suggest ? "required by --policy suggest" : "only valid with --policy suggest");
  if (o.no_serp_prefetch && !cache) throw UsageError("--no-serp-prefetch", "only valid with --policy cache");
  const util::Delimiter delim = o.format == "tsv" ? util::Delimiter::Tab : util::Delimiter::Comma;

  Run run("sessions-sim", o.out);
  run.set_seed(o.seed);
  run.config() = {{"log", o.log},       {"policy", o.policy},   {"rtt_min", o.rtt_min},     {"engine", o.engine},
                  {"format", o.format}, {"threads", o.threads}, {"serp_prefetch", !o.no_serp_prefetch}};
  if (o.k) run.config()["k"] = *o.k;
  if (o.cache_fraction) run.config()["cache_fraction"] = *o.cache_fraction;
  if (!o.corpus.empty()) run.config()["corpus"] = o.corpus;
  if (!o.cache_list.empty()) run.config()["cache_list"] = o.cache_list;
  if (!o.suggestions.empty()) run.config()["suggestions"] = o.suggestions;
  if (cache && o.cache_fraction) run.config()["negatives"] = o.negatives;

  const sessions::SessionLog log = load_log(run, o.log);
  const sim::LinkConfig link = sim::LinkConfig::from_roundtrip_minutes(o.rtt_min);

  std::optional<retrieval::Corpus> corpus;
  if (!o.corpus.empty()) corpus = load_corpus(run, o.corpus);
  std::optional<retrieval::Index> index;
  std::optional<retrieval::Bm25Scorer> scorer;
  retrieval::DocSet cache_set;
  strategies::SuggestionProvider provider;
  strategies::ReplayContext ctx;

  if (topical) {
    index = retrieval::Index::build(*corpus);
    scorer.emplace(*index);
    policy.k = o.k;
    ctx.scorer = &*scorer;
  }
  if (cache) {
    if (!o.cache_list.empty()) {
      const auto ids = read_docid_list(run, o.cache_list);
      cache_set.insert(ids.begin(), ids.end());
    } else {
      const auto model = train_static_ranker(*corpus, o.negatives, o.seed);
      cache_set = retrieval::select_cache(model, *corpus, *o.cache_fraction);
    }
    policy.cache_fraction = o.cache_fraction.value_or(0.0);
    policy.combine_serp_prefetch = !o.no_serp_prefetch;
    ctx.cache = &cache_set;
  }
  if (suggest) {
    provider = strategies::SuggestionProvider::from_json(run.read_input(o.suggestions));
    policy.suggestions = &provider;
  }

  std::vector<strategies::SessionOutcome> outcomes;
  if (o.engine == "event") {
    outcomes.resize(log.sessions.size());
    for (std::size_t i = 0; i < log.sessions.size(); ++i)
      outcomes[i] = strategies::simulate(log.sessions[i], link, policy, ctx);
  } else {
    outcomes = strategies::replay_log(log, link, policy, ctx, o.threads);
  }

  const metrics::RatioReport report = metrics::ratio_report(log, outcomes);
  const std::string ext = o.format == "tsv" ? ".tsv" : ".csv";
  const std::vector<metrics::TableRow> rows{metrics::earth_row(report), metrics::mars_row(report, o.rtt_min)};
  run.emit("sessions" + ext, metrics::render_sessions(report, delim));
  run.emit("summary" + ext, metrics::render_table(rows, delim));
  run.emit("scatter" + ext, metrics::render_scatter(report, metrics::View::Mars, delim));
  run.emit("scatter_earth" + ext, metrics::render_scatter(report, metrics::View::Earth, delim));
  run.emit("exclusions" + ext, metrics::render_exclusions(report, delim));
  if (topical) {
    const auto hits = strategies::topical_prefetch_hits(log, *scorer, *o.k);
    util::TableWriter w(delim);
    w.row({"k", "hits", "candidates", "ratio", "missing"});
    w.row({std::to_string(*o.k), std::to_string(hits.hits), std::to_string(hits.candidates),
           hits.ratio() ? util::fixed(*hits.ratio()) : "", std::to_string(hits.missing.size())});
    run.emit("hits" + ext, w.str());
  }
  run.commit();
}

// ---- recall-sim -------------------------------------------------------------

struct RecallSimOpts {
  std::string corpus;
  std::string qrels;
  std::string scenario;
  double rtt_min = 8.0;
  std::string cache_seed;
  std::optional<double> cache_fraction;
  std::vector<std::string> topics;
  std::optional<double> budget_s;
  std::optional<double> recall_target;
  std::string cadence = "jit";
  double grid_s = 60.0;
  unsigned threads = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

void recall_sim(const RecallSimOpts& o) {
  recall::ScenarioConfig cfg;
  try {
    cfg.kind = recall::scenario_kind_from_string(o.scenario);
  } catch (const InvalidArgument& e) {
    throw UsageError("--scenario", e.what());
  }
  const bool with_cache = cfg.kind == recall::ScenarioKind::MarsTARWithCache;
  if (with_cache && o.cache_seed.empty() && !o.cache_fraction)
    throw UsageError("--cache-seed", "--scenario mars-cache needs --cache-seed or --cache-fraction");
  if (!with_cache && (!o.cache_seed.empty() || o.cache_fraction))
    throw UsageError(o.cache_seed.empty() ? "--cache-fraction" : "--cache-seed", "only valid with --scenario mars-cache");
  if (!o.cache_seed.empty() && o.cache_fraction) throw UsageError("--cache-fraction", "conflicts with --cache-seed");

  Run run("recall-sim", o.out);
  run.set_seed(o.seed);
  run.config() = {{"corpus", o.corpus}, {"qrels", o.qrels},   {"scenario", o.scenario}, {"rtt_min", o.rtt_min},
                  {"cadence", o.cadence}, {"grid_s", o.grid_s}, {"threads", o.threads}};
  if (!o.cache_seed.empty()) run.config()["cache_seed"] = o.cache_seed;
  if (o.cache_fraction) run.config()["cache_fraction"] = *o.cache_fraction;
  if (!o.topics.empty()) run.config()["topics"] = o.topics;
  if (o.budget_s) run.config()["budget_s"] = *o.budget_s;
  if (o.recall_target) run.config()["recall_target"] = *o.recall_target;

  const retrieval::Corpus corpus = load_corpus(run, o.corpus);
  const retrieval::Qrels qrels = retrieval::read_qrels(run.read_input(o.qrels));
  cfg.link = sim::LinkConfig::from_roundtrip_minutes(o.rtt_min);
  cfg.cadence = o.cadence == "heartbeat" ? recall::ShippingCadence::RoundtripHeartbeat
                                         : recall::ShippingCadence::JustInTime;
  cfg.stop.time_budget_s = o.budget_s;
  cfg.stop.recall_target = o.recall_target;
  cfg.seed = o.seed;
  if (!o.cache_seed.empty()) {
    const auto ids = read_docid_list(run, o.cache_seed);
    cfg.cache_seed = retrieval::DocSet(ids.begin(), ids.end());
  } else if (o.cache_fraction) {
    const auto ids = retrieval::chronological_prefix(corpus, *o.cache_fraction);
    cfg.cache_seed = retrieval::DocSet(ids.begin(), ids.end());
  }

  std::vector<std::string> topics = o.topics;
  if (topics.empty())
    for (const auto& t : corpus.topics) topics.push_back(t.id);
  for (const auto& t : topics)
    if (!corpus.topic(t)) throw UsageError("--topics", "unknown topic '" + t + "'");

  const recall::FeatureStore store(corpus);
  std::vector<recall::GainCurve> curves(topics.size());
  std::vector<std::exception_ptr> errors(topics.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(topics.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < topics.size(); i += threads) {
        try {
          curves[i] = recall::run_scenario(cfg, corpus, store, topics[i], qrels);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  util::TableWriter summary;
  summary.row({"topic", "relevant", "judged", "shipped", "final_recall", "time_to_80_s"});
  for (const auto& c : curves) {
    run.emit("gain_" + sanitize(c.topic) + ".csv", metrics::render_gain_curve(c));
    const auto t80 = c.time_to_recall(0.8);
    summary.row({c.topic, std::to_string(c.relevant_total), std::to_string(c.docs_judged),
                 std::to_string(c.docs_shipped), util::fixed(c.points.empty() ? 0.0 : c.points.back().recall),
                 t80 ? util::fixed(*t80) : ""});
  }
  run.emit("gain_aggregate.csv", metrics::render_aggregate(metrics::aggregate_curves(curves, o.grid_s)));
  run.emit("summary.csv", summary.str());
  run.commit();
}

// ---- cache-eval -------------------------------------------------------------

struct CacheEvalOpts {
  std::string log;
  std::string corpus;
  std::string fractions = "0.01,0.05,0.10,0.20";
  std::size_t negatives = 3000;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

void cache_eval(const CacheEvalOpts& o) {
  const std::vector<double> fractions = parse_fractions(o.fractions);
  Run run("cache-eval", o.out);
  run.set_seed(o.seed);
  run.config() = {{"log", o.log}, {"corpus", o.corpus}, {"fractions", fractions}, {"negatives", o.negatives}};
  const sessions::SessionLog log = load_log(run, o.log);
  const retrieval::Corpus corpus = load_corpus(run, o.corpus);
  const auto model = train_static_ranker(corpus, o.negatives, o.seed);
  const auto ranked = retrieval::static_rank(model, corpus);
  std::vector<metrics::HitRatioRow> rows;
  for (double f : fractions) {
    const auto h = retrieval::cache_hit_ratios(log, retrieval::select_cache(ranked, f));
    rows.push_back({f, h.clicked_ratio(), h.serp_ratio()});
  }
  run.emit("hit_ratios.csv", metrics::render_hit_ratios(rows));
  run.commit();
}

// ---- suggest-eval -----------------------------------------------------------

struct SuggestEvalOpts {
  std::string log;
  std::string suggestions;
  std::string out;
};

void suggest_eval(const SuggestEvalOpts& o) {
  Run run("suggest-eval", o.out);
  run.config() = {{"log", o.log}, {"suggestions", o.suggestions}};
  const sessions::SessionLog log = load_log(run, o.log);
  const auto provider = strategies::SuggestionProvider::from_json(run.read_input(o.suggestions));
  std::size_t queries = 0;
  std::size_t later = 0;
  for (const auto& s : log.sessions) {
    queries += s.interactions.size();
    later += s.interactions.empty() ? 0 : s.interactions.size() - 1;
  }
  util::TableWriter w;
  w.row({"sessions", "queries", "later_queries", "matches"});
  w.row({std::to_string(log.sessions.size()), std::to_string(queries), std::to_string(later),
         std::to_string(strategies::suggestion_matches(log, provider))});
  run.emit("suggestions.csv", w.str());
  run.commit();
}

// ---- report -----------------------------------------------------------------

struct ReportOpts {
  std::string in;
  std::string format = "csv";
  std::string out;
};

void report(const ReportOpts& o) {
  if (!fs::is_directory(o.in)) throw UsageError("--in", "'" + o.in + "' is not a directory");
  const fs::path out = o.out.empty() ? fs::path(o.in) / "report" : fs::path(o.out);
  const util::Delimiter delim = o.format == "tsv" ? util::Delimiter::Tab : util::Delimiter::Comma;
  const std::string ext = o.format == "tsv" ? ".tsv" : ".csv";

  std::vector<fs::path> manifests;
  for (const auto& entry : fs::recursive_directory_iterator(o.in)) {
    if (entry.is_regular_file() && entry.path().filename() == "manifest.json" &&
        fs::weakly_canonical(entry.path().parent_path()) != fs::weakly_canonical(out))
      manifests.push_back(entry.path());
  }
  std::sort(manifests.begin(), manifests.end());

  Run run("report", out);
  run.config() = {{"in", o.in}, {"format", o.format}};
  struct Group {
    std::optional<metrics::TableRow> earth;
    std::vector<metrics::TableRow> mars;
  };
  std::map<std::string, Group> groups;  // policy -> rows
  std::set<std::string> logs;
  for (const fs::path& m : manifests) {
    json manifest;
    try {
      manifest = json::parse(run.read_input(m.string()));
    } catch (const json::parse_error& e) {
      throw ParseError(m.string() + ": " + e.what());
    }
    if (manifest.value("command", "") != "sessions-sim") continue;
    const json& config = manifest.at("config");
    const std::string policy = config.at("policy").get<std::string>();
    const bool tsv = config.value("format", "csv") == "tsv";
    const fs::path summary = m.parent_path() / (tsv ? "summary.tsv" : "summary.csv");
    const auto table = util::parse_table(run.read_input(summary.string()), tsv ? util::Delimiter::Tab : util::Delimiter::Comma);
    logs.insert(manifest.at("inputs").at(config.at("log").get<std::string>()).at("sha256").get<std::string>());
    for (std::size_t r = 1; r < table.size(); ++r) {
      const auto& f = table[r];
      if (f.size() != 6) throw SchemaError(summary.string() + ": expected 6 columns");
      metrics::TableRow row{f[0], std::stod(f[1]), std::stod(f[2]), std::stod(f[3]), std::stod(f[4]), std::stod(f[5])};
      Group& g = groups[policy];
      if (row.location == "Earth") {
        if (!g.earth) g.earth = row;
      } else {
        g.mars.push_back(row);
      }
    }
  }
  if (groups.empty()) throw Error("no sessions-sim runs found under '" + o.in + "'");
  if (logs.size() > 1) throw Error("runs under '" + o.in + "' replay different logs; report them separately");
  for (auto& [policy, g] : groups) {
    std::stable_sort(g.mars.begin(), g.mars.end(), [](const auto& a, const auto& b) { return a.lag_min < b.lag_min; });
    std::vector<metrics::TableRow> rows;
    if (g.earth) rows.push_back(*g.earth);
    rows.insert(rows.end(), g.mars.begin(), g.mars.end());
    run.emit("report_" + sanitize(policy) + ext, metrics::render_table(rows, delim));
  }
  run.commit();
}

template <class T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& var, const std::string& help) {
  return app->add_option(name, var, help)->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-event simulator for web search across the Earth-Mars link"};
  app.name("lagsim");
  app.require_subcommand(1);
  app.set_version_flag("--version", "lagsim 1.0.0");

  GenCorpusOpts gc;
  auto* c = app.add_subcommand("gen-corpus", "Generate a labeled synthetic corpus (corpus.jsonl, qrels.txt)");
  opt(c, "--docs", gc.cfg.n_docs, "Number of documents")->check(CLI::PositiveNumber);
  opt(c, "--topics", gc.cfg.n_topics, "Number of topics")->check(CLI::PositiveNumber);
  opt(c, "--prevalence", gc.cfg.prevalence, "Fraction of documents relevant to each topic")->check(CLI::Range(0.0, 1.0));
  opt(c, "--spam", gc.cfg.spam_fraction, "Fraction of spam documents")->check(CLI::Range(0.0, 1.0));
  opt(c, "--judged-nonrelevant", gc.cfg.judged_nonrelevant_fraction, "Fraction of other documents judged per topic")
      ->check(CLI::Range(0.0, 1.0));
  opt(c, "--quality-signal", gc.cfg.quality_signal, "Spam-vocabulary rate of a quality-0 page")
      ->check(CLI::Range(0.0, 1.0));
  opt(c, "--seed", gc.cfg.seed, "Random seed");
  opt(c, "--out", gc.out, "Output directory")->required();
  c->callback([&] { gen_corpus(gc); });

  GenLogOpts gl;
  auto* l = app.add_subcommand("gen-log", "Synthesize a session log over a corpus (log.json, suggestions.json)");
  opt(l, "--corpus", gl.corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  opt(l, "--sessions", gl.sessions, "Number of sessions")->check(CLI::PositiveNumber);
  opt(l, "--queries-per-topic", gl.queries_per_topic, "Distinct queries per topic")->check(CLI::PositiveNumber);
  opt(l, "--serp-size", gl.serp_size, "Results per SERP")->check(CLI::PositiveNumber);
  opt(l, "--position-decay", gl.position_decay, "Click weight exponent on rank")->check(CLI::NonNegativeNumber);
  opt(l, "--quality-bias", gl.quality_bias, "Click weight on document quality")->check(CLI::NonNegativeNumber);
  opt(l, "--seed", gl.seed, "Random seed");
  opt(l, "--out", gl.out, "Output directory")->required();
  l->callback([&] { gen_log(gl); });

  SessionsSimOpts ss;
  auto* s = app.add_subcommand("sessions-sim", "Replay a session log under a remediation policy");
  opt(s, "--log", ss.log, "Session log (TREC XML or canonical JSON)")->required()->check(CLI::ExistingFile);
  opt(s, "--policy", ss.policy, "baseline|serp|topical|suggest|cache")
      ->required()
      ->check(CLI::IsMember({"baseline", "serp", "topical", "suggest", "cache"}));
  opt(s, "--rtt-min", ss.rtt_min, "Roundtrip latency in minutes (8 closest, 48 farthest)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  s->add_option("--k", ss.k, "Topical prefetch depth")->check(CLI::PositiveNumber);
  s->add_option("--cache-fraction", ss.cache_fraction, "Fraction of the corpus cached on Mars")
      ->check(CLI::Range(0.0, 1.0));
  opt(s, "--corpus", ss.corpus, "Corpus JSONL (topical index, static ranker)")->check(CLI::ExistingFile);
  opt(s, "--cache-list", ss.cache_list, "File of cached docids, one per line")->check(CLI::ExistingFile);
  opt(s, "--suggestions", ss.suggestions, "JSON map of query to suggestions")->check(CLI::ExistingFile);
  s->add_flag("--no-serp-prefetch", ss.no_serp_prefetch, "Static cache without SERP pre-fetching");
  opt(s, "--negatives", ss.negatives, "Judged non-relevant sample for the static ranker")->check(CLI::NonNegativeNumber);
  opt(s, "--engine", ss.engine, "closed (analytic) or event (event kernel)")->check(CLI::IsMember({"closed", "event"}));
  opt(s, "--format", ss.format, "csv|tsv")->check(CLI::IsMember({"csv", "tsv"}));
  opt(s, "--threads", ss.threads, "Worker threads")->check(CLI::PositiveNumber);
  opt(s, "--seed", ss.seed, "Random seed (static ranker training)");
  opt(s, "--out", ss.out, "Output directory")->required();
  s->callback([&] { sessions_sim(ss); });

  RecallSimOpts rs;
  auto* r = app.add_subcommand("recall-sim", "Run a total-recall scenario and emit gain curves");
  opt(r, "--corpus", rs.corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  opt(r, "--qrels", rs.qrels, "TREC qrels")->required()->check(CLI::ExistingFile);
  opt(r, "--scenario", rs.scenario, "earth|earth-lat|mars-cache|mars-nocache")
      ->required()
      ->check(CLI::IsMember({"earth", "earth-lat", "mars-cache", "mars-nocache"}));
  opt(r, "--rtt-min", rs.rtt_min, "Roundtrip latency in minutes")->required()->check(CLI::NonNegativeNumber);
  opt(r, "--cache-seed", rs.cache_seed, "File of docids initially cached on Mars")->check(CLI::ExistingFile);
  r->add_option("--cache-fraction", rs.cache_fraction, "Cache the chronologically first fraction of the corpus")
      ->check(CLI::Range(0.0, 1.0));
  r->add_option("--topics", rs.topics, "Topics to run (default all)")->delimiter(',');
  r->add_option("--budget-s", rs.budget_s, "Virtual time budget in seconds")->check(CLI::NonNegativeNumber);
  r->add_option("--recall-target", rs.recall_target, "Stop once recall reaches this value")
      ->check(CLI::Range(0.0, 1.0));
  opt(r, "--cadence", rs.cadence, "Earth shipping cadence: jit|heartbeat")->check(CLI::IsMember({"jit", "heartbeat"}));
  opt(r, "--grid-s", rs.grid_s, "Time step of the aggregate curve")->check(CLI::PositiveNumber);
  opt(r, "--threads", rs.threads, "Worker threads (topics run in parallel)")->check(CLI::PositiveNumber);
  opt(r, "--seed", rs.seed, "Random seed (presumed-negative sampling)");
  opt(r, "--out", rs.out, "Output directory")->required();
  r->callback([&] { recall_sim(rs); });

  CacheEvalOpts ce;
  auto* e = app.add_subcommand("cache-eval", "Cache hit ratios of static-rank caches");
  opt(e, "--log", ce.log, "Session log")->required()->check(CLI::ExistingFile);
  opt(e, "--corpus", ce.corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  opt(e, "--fractions", ce.fractions, "Comma-separated cache fractions");
  opt(e, "--negatives", ce.negatives, "Judged non-relevant sample for the static ranker")->check(CLI::NonNegativeNumber);
  opt(e, "--seed", ce.seed, "Random seed");
  opt(e, "--out", ce.out, "Output directory")->required();
  e->callback([&] { cache_eval(ce); });

  SuggestEvalOpts se;
  auto* g = app.add_subcommand("suggest-eval", "Count later queries that an earlier suggestion matched");
  opt(g, "--log", se.log, "Session log")->required()->check(CLI::ExistingFile);
  opt(g, "--suggestions", se.suggestions, "JSON map of query to suggestions")->required()->check(CLI::ExistingFile);
  opt(g, "--out", se.out, "Output directory")->required();
  g->callback([&] { suggest_eval(se); });

  ReportOpts rp;
  auto* p = app.add_subcommand("report", "Collect sessions-sim summaries into location/lag tables");
  opt(p, "--in", rp.in, "Directory holding sessions-sim runs")->required();
  opt(p, "--format", rp.format, "csv|tsv")->check(CLI::IsMember({"csv", "tsv"}));
  opt(p, "--out", rp.out, "Output directory (default <in>/report)");
  p->callback([&] { report(rp); });

  if (argc <= 1) {
    err << app.help() << "error: a subcommand is required\n";
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    err << "lagsim: " << ex.what() << "\nRun 'lagsim --help' for usage.\n";
    return 2;
  } catch (const UsageError& ex) {
    err << "lagsim: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "lagsim: error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace lagsim::cli
