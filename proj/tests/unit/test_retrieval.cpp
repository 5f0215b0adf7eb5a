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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "lagsim/retrieval/bm25.hpp"
#include "lagsim/retrieval/corpus.hpp"
#include "lagsim/retrieval/index.hpp"
#include "lagsim/retrieval/quality.hpp"
#include "lagsim/retrieval/tokenizer.hpp"
#include "lagsim/util/error.hpp"
#include "support/builders.hpp"

using namespace lagsim;
using namespace lagsim::retrieval;

namespace {

std::vector<Document> random_docs(std::size_t n, std::size_t vocab, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    const std::size_t len = rng() % 30;
    for (std::size_t w = 0; w < len; ++w) text += "w" + std::to_string(rng() % vocab) + (w % 5 == 4 ? ". " : " ");
    char id[16];
    std::snprintf(id, sizeof id, "doc%03zu", i);
    docs.push_back(make_document(id, text));
  }
  return docs;
}

std::string random_query(std::mt19937_64& rng, std::size_t vocab) {
  std::string q;
  const std::size_t len = 1 + rng() % 4;
  for (std::size_t i = 0; i < len; ++i) q += "W" + std::to_string(rng() % (vocab + 3)) + " ";
  return q;
}

// Exhaustive BM25 written from the textbook formula.
std::map<std::string, double> brute_force_scores(const std::vector<Document>& docs, const std::string& query) {
  const double k1 = 0.9, b = 0.4;
  std::vector<std::map<std::string, int>> tf(docs.size());
  std::vector<double> len(docs.size());
  double total = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const auto& t : tokenize(docs[i].text)) ++tf[i][t];
    len[i] = static_cast<double>(tokenize(docs[i].text).size());
    total += len[i];
  }
  const double N = static_cast<double>(docs.size());
  const double avgdl = total / N;
  std::map<std::string, double> scores;
  for (const auto& term : tokenize(query)) {
    double df = 0;
    for (const auto& m : tf) df += m.count(term) ? 1 : 0;
    if (df == 0) continue;
    const double idf = std::log(1.0 + (N - df + 0.5) / (df + 0.5));
    for (std::size_t i = 0; i < docs.size(); ++i) {
      auto it = tf[i].find(term);
      if (it == tf[i].end()) continue;
      const double f = it->second;
      scores[docs[i].docid] += idf * f * (k1 + 1) / (f + k1 * (1 - b + b * len[i] / avgdl));
    }
  }
  return scores;
}

}  // namespace

TEST_CASE("tokenizer splits and lowercases") {
  CHECK(tokenize("Hello, World! x2") == std::vector<std::string>{"hello", "world", "x2"});
  CHECK(tokenize("") .empty());
  CHECK(tokenize("\xC3\x89T\xC3\x89") == std::vector<std::string>{"\xC3\xA9t\xC3\xA9"});
  CHECK(tokenize("\xCE\x93\xCE\x95\xCE\x99\xCE\x91") == std::vector<std::string>{"\xCE\xB3\xCE\xB5\xCE\xB9\xCE\xB1"});
  CHECK(tokenize("a\xFF" "b") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("one document index") {
  std::vector<Document> docs{make_document("d", "a b a")};
  const Index idx = Index::build(docs);
  REQUIRE(idx.postings("a").size() == 1);
  CHECK(idx.postings("a")[0] == Posting{0, 2});
  CHECK(idx.postings("b")[0] == Posting{0, 1});
  CHECK(idx.postings("zzz").empty());
  CHECK(idx.avgdl() == 3.0);
  CHECK(idx.terms() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("empty text contributes length zero and no postings") {
  std::vector<Document> docs{make_document("e", ""), make_document("f", "x")};
  const Index idx = Index::build(docs);
  CHECK(idx.doc_length(*idx.ordinal("e")) == 0);
  CHECK(idx.num_terms() == 1);
  CHECK(idx.avgdl() == 0.5);
}

TEST_CASE("index build errors") {
  CHECK_THROWS_AS(Index::build(std::vector<Document>{}), InvalidArgument);
  std::vector<Document> dup{make_document("a", "x"), make_document("a", "y")};
  CHECK_THROWS_AS(Index::build(dup), InvalidArgument);
}

TEST_CASE("postings equal brute-force term counts") {
  const auto docs = random_docs(100, 60, 11);
  const Index idx = Index::build(docs);
  std::map<std::string, std::map<std::string, std::uint32_t>> expect;
  for (const auto& d : docs)
    for (const auto& t : tokenize(d.text)) ++expect[t][d.docid];
  CHECK(idx.num_terms() == expect.size());
  for (const auto& [term, counts] : expect) {
    const auto p = idx.postings(term);
    REQUIRE(p.size() == counts.size());
    std::size_t i = 0;
    for (const auto& [docid, tf] : counts) {  // map order = docid order = ordinal order
      CHECK(idx.docid(p[i].doc) == docid);
      CHECK(p[i].tf == tf);
      ++i;
    }
  }
}

TEST_CASE("single-term query ranks the matching doc first") {
  std::vector<Document> docs{make_document("a", "red fish"), make_document("b", "blue fish"),
                             make_document("c", "green tree")};
  const Index idx = Index::build(docs);
  auto hits = bm25_search(idx, "blue", 10);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].docid == "b");
  CHECK(bm25_search(idx, "absent", 10).empty());
  CHECK(bm25_search(idx, "", 10).empty());
  CHECK(bm25_idf(10, 0) > bm25_idf(10, 9));
  CHECK(bm25_idf(10, 10) > 0.0);
}

TEST_CASE("BM25 top-k equals exhaustive scoring") {
  for (std::size_t n : {20u, 100u}) {
    const auto docs = random_docs(n, 40, n);
    const Index idx = Index::build(docs);
    const Bm25Scorer scorer(idx);
    std::mt19937_64 rng(n * 7);
    for (int q = 0; q < 40; ++q) {
      const std::string query = random_query(rng, 40);
      const auto oracle = brute_force_scores(docs, query);
      for (std::size_t k : {1u, 5u, 10u, 1000u}) {
        const auto got = scorer.search(query, k);
        CHECK(got.size() == std::min(k, oracle.size()));
        std::set<std::string> in_result;
        for (std::size_t i = 0; i < got.size(); ++i) {
          in_result.insert(got[i].docid);
          REQUIRE(oracle.count(got[i].docid));
          CHECK(got[i].score == doctest::Approx(oracle.at(got[i].docid)).epsilon(1e-12));
          if (i > 0) {
            CHECK(got[i - 1].score >= got[i].score);
            if (got[i - 1].score == got[i].score) CHECK(got[i - 1].docid < got[i].docid);
          }
        }
        if (!got.empty())
          for (const auto& [docid, s] : oracle)
            if (!in_result.count(docid)) CHECK(s <= got.back().score + 1e-12);
      }
    }
  }
}

TEST_CASE("padded top-k returns exactly min(k, N) distinct docs") {
  const auto docs = random_docs(30, 40, 3);
  const Index idx = Index::build(docs);
  const Bm25Scorer scorer(idx);
  const auto hits = scorer.search("w1 w2", 1000);
  const auto top = scorer.top_k_padded("w1 w2", 25);
  CHECK(top.size() == 25);
  CHECK(std::set<std::string>(top.begin(), top.end()).size() == 25);
  for (std::size_t i = 0; i < std::min<std::size_t>(hits.size(), 25); ++i) CHECK(top[i] == hits[i].docid);
  CHECK(scorer.top_k_padded("w1", 1000).size() == 30);
  CHECK(scorer.top_k_padded("nothing", 3) == std::vector<std::string>{"doc000", "doc001", "doc002"});
}

TEST_CASE("char 4-grams are sorted, unique and bounded") {
  const auto f = char4gram_features("abcdabcd", 8);
  CHECK(std::is_sorted(f.begin(), f.end()));
  CHECK(std::adjacent_find(f.begin(), f.end()) == f.end());
  CHECK(f.size() <= 4);  // abcd bcda cdab dabc
  for (auto x : f) CHECK(x < 256u);
  CHECK(char4gram_features("abc", 20).empty());
}

TEST_CASE("separable corpus trains to perfect separation") {
  std::mt19937_64 rng(5);
  std::vector<Document> pos, neg;
  for (int i = 0; i < 60; ++i) {
    std::string t;
    for (int w = 0; w < 20; ++w) t += "w" + std::to_string(rng() % 200) + " ";
    if (i % 2 == 0)
      pos.push_back(make_document("p" + std::to_string(i), t + "zqxjmarker"));
    else
      neg.push_back(make_document("n" + std::to_string(i), t));
  }
  QualityParams params;
  params.learning_rate = 0.05;
  params.epochs = 20;
  const QualityModel m = train_quality(pos, neg, params);
  double min_pos = 1e300, max_neg = -1e300;
  for (const auto& d : pos) min_pos = std::min(min_pos, m.score_text(d.text));
  for (const auto& d : neg) max_neg = std::max(max_neg, m.score_text(d.text));
  CHECK(min_pos > max_neg);
}

TEST_CASE("identical positive and negative sets give chance-level separation") {
  std::mt19937_64 rng(8);
  auto doc = [&](const std::string& id) {
    std::string t;
    for (int w = 0; w < 30; ++w) t += "w" + std::to_string(rng() % 500) + " ";
    return make_document(id, t);
  };
  std::vector<Document> same;
  for (int i = 0; i < 300; ++i) same.push_back(doc("s" + std::to_string(i)));
  const QualityModel m = train_quality(same, same);
  std::vector<double> a, b;
  for (int i = 0; i < 800; ++i) (i % 2 ? a : b).push_back(m.score_text(doc("h" + std::to_string(i)).text));
  CHECK(auc(a, b) == doctest::Approx(0.5).epsilon(0.1));  // |AUC - 0.5| <= 0.05
}

TEST_CASE("auc edge cases") {
  CHECK(auc(std::vector<double>{2, 3}, std::vector<double>{0, 1}) == 1.0);
  CHECK(auc(std::vector<double>{0}, std::vector<double>{1}) == 0.0);
  CHECK(auc(std::vector<double>{1, 1}, std::vector<double>{1}) == 0.5);
}

TEST_CASE("training needs both classes") {
  std::vector<Document> one{make_document("a", "some text here")};
  CHECK_THROWS_AS(train_quality(one, {}), InvalidArgument);
}

TEST_CASE("negative sampling is reproducible") {
  CorpusGenConfig cfg;
  cfg.n_docs = 400;
  const Corpus c = generate_corpus(cfg);
  const auto a = quality_training_set(c, 20, 99);
  const auto b = quality_training_set(c, 20, 99);
  const auto d = quality_training_set(c, 20, 100);
  CHECK(a.negatives == b.negatives);
  CHECK(a.positives == b.positives);
  CHECK_FALSE(a.negatives == d.negatives);
  for (const auto& p : a.positives) CHECK(p.relevant_to_any());
  for (const auto& n : a.negatives) CHECK((n.spam() || n.judged_nonrelevant()));
  CHECK(sample_documents(c.documents, 5, 1) == sample_documents(c.documents, 5, 1));
  CHECK(sample_documents(c.documents, 10000, 1).size() == c.documents.size());
}

TEST_CASE("static rank and cache selection") {
  CorpusGenConfig cfg;
  cfg.n_docs = 500;
  const Corpus c = generate_corpus(cfg);
  const auto set = quality_training_set(c, 100, 1);
  const QualityModel m = train_quality(set.positives, set.negatives);

  std::vector<std::pair<double, std::string>> oracle;
  for (const auto& d : c.documents) oracle.emplace_back(-m.score_text(d.text), d.docid);
  std::sort(oracle.begin(), oracle.end());
  const auto ranked = static_rank(m, c);
  REQUIRE(ranked.size() == oracle.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) CHECK(ranked[i] == oracle[i].second);

  CHECK(select_cache(m, c, 0.0).empty());
  CHECK(select_cache(m, c, 1.0).size() == c.documents.size());
  CHECK(select_cache(ranked, 0.1).size() == 50);
  CHECK_THROWS_AS(select_cache(ranked, 1.5), InvalidArgument);
  CHECK_THROWS_AS(select_cache(ranked, -0.1), InvalidArgument);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    double f1 = u(rng), f2 = u(rng);
    if (f1 > f2) std::swap(f1, f2);
    const DocSet a = select_cache(ranked, f1), b = select_cache(ranked, f2);
    for (const auto& d : a) CHECK(b.count(d));
    CHECK(a.size() == static_cast<std::size_t>(std::floor(f1 * 500 + 1e-9)));
  }
}

TEST_CASE("hit ratios at the extremes") {
  const auto log = lagsim::testing::synthetic_log(50, 4, 100);
  DocSet all;
  for (int i = 0; i < 100; ++i) all.insert("d" + std::to_string(i));
  const auto full = cache_hit_ratios(log, all);
  CHECK(full.clicked_ratio() == std::optional<double>(1.0));
  CHECK(full.serp_ratio() == std::optional<double>(1.0));
  const auto none = cache_hit_ratios(log, {});
  CHECK(none.clicked_ratio() == std::optional<double>(0.0));
  CHECK(none.serp_ratio() == std::optional<double>(0.0));
  CHECK_FALSE(cache_hit_ratios(sessions::SessionLog{}, all).clicked_ratio());
}

TEST_CASE("corpus and qrels serialization round trips") {
  CorpusGenConfig cfg;
  cfg.n_docs = 120;
  cfg.n_topics = 3;
  const Corpus c = generate_corpus(cfg);
  const Corpus back = read_corpus_jsonl(write_corpus_jsonl(c));
  CHECK(back.documents == c.documents);
  CHECK(back.topics == c.topics);
  const Qrels q = qrels_from_corpus(c);
  CHECK(read_qrels(write_qrels(q)) == q);
  CHECK(q.size() == 3);
  for (const auto& [topic, docs] : q) {
    std::size_t rel = 0;
    for (const auto& [d, g] : docs) rel += g > 0;
    CHECK(rel == 6);  // 5% of 120
  }
  CHECK_THROWS_AS(read_corpus_jsonl("{\"docid\":\"a\",\"text\":\"x\"}\n{oops"), ParseError);
  CHECK_THROWS_AS(read_qrels("t1 0 d1\n"), ParseError);
}

TEST_CASE("generated corpus is deterministic and chronological") {
  CorpusGenConfig cfg;
  cfg.n_docs = 200;
  const Corpus a = generate_corpus(cfg), b = generate_corpus(cfg);
  CHECK(a.documents == b.documents);
  for (std::size_t i = 1; i < a.documents.size(); ++i) CHECK(a.documents[i - 1].docid < a.documents[i].docid);
  const auto prefix = chronological_prefix(a, 0.03);
  CHECK(prefix.size() == 6);
  CHECK(prefix.front() == a.documents.front().docid);
  for (const auto& d : a.documents) CHECK(d.word_count == whitespace_word_count(d.text));
  const auto queries = topic_queries(a, 4, 1);
  CHECK(queries.size() == cfg.n_topics);
  for (const auto& g : queries) CHECK(g.size() == 4);
}
