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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <unordered_set>

#include "lagsim/retrieval/corpus.hpp"
#include "lagsim/util/error.hpp"

namespace lagsim::retrieval {
namespace {

std::string padded_id(char prefix, std::size_t n, int width) {
  std::string digits = std::to_string(n);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return prefix + digits;
}


constexpr const char* kOnsets[] = {"b", "c", "d", "f", "g", "h", "j", "k", "l", "m", "n", "p", "r",
                                   "s", "t", "v", "w", "z", "br", "cl", "dr", "st", "tr", "sh", "th"};
constexpr const char* kVowels[] = {"a", "e", "i", "o", "u", "ai", "ea", "io", "ou"};
constexpr const char* kCodas[] = {"", "", "", "n", "r", "s", "l", "t", "m", "x"};

class WordMaker {
 public:
  explicit WordMaker(std::mt19937_64& rng) : rng_(rng) {}

  /// A fresh pronounceable word never returned before.
  std::string fresh() {
    for (;;) {
      const int syllables = std::uniform_int_distribution<int>(2, 4)(rng_);
      std::string w;
      for (int s = 0; s < syllables; ++s) {
        w += pick(kOnsets);
        w += pick(kVowels);
      }
      w += pick(kCodas);
      if (seen_.insert(w).second) return w;
    }
  }

 private:
  template <std::size_t N>
  const char* pick(const char* const (&arr)[N]) {
    return arr[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng_)];
  }

  std::mt19937_64& rng_;
  std::unordered_set<std::string> seen_;
};

/// Zipf(1) sampler over ranks 0..n-1.
class Zipf {
 public:
  explicit Zipf(std::size_t n) : cdf_(n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += 1.0 / static_cast<double>(i + 1);
      cdf_[i] = acc;
    }
  }
  std::size_t operator()(std::mt19937_64& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, cdf_.back())(rng);
    return std::min<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin(), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

enum class Role { Relevant, Nonrelevant, Spam };

}  // namespace

Corpus generate_corpus(const CorpusGenConfig& cfg) {
  if (cfg.n_docs == 0) throw InvalidArgument("generate_corpus: need at least one document");
  if (cfg.min_words == 0 || cfg.max_words < cfg.min_words)
    throw InvalidArgument("generate_corpus: bad document length range");
  if (cfg.prevalence * static_cast<double>(cfg.n_topics) + cfg.spam_fraction > 1.0)
    throw InvalidArgument("generate_corpus: topic prevalence and spam exceed the collection");

  std::mt19937_64 rng(cfg.seed);
  WordMaker words(rng);
  std::vector<std::string> background(cfg.background_vocabulary);
  for (auto& w : background) w = words.fresh();
  std::vector<std::vector<std::string>> topic_vocab(cfg.n_topics);
  for (auto& v : topic_vocab) {
    v.resize(cfg.topic_vocabulary);
    for (auto& w : v) w = words.fresh();
  }
  std::vector<std::string> spam_vocab(60);
  for (auto& w : spam_vocab) w = words.fresh();
  const Zipf zipf_background(background.size());
  const Zipf zipf_topic(cfg.topic_vocabulary);

  Corpus corpus;
  const int width = static_cast<int>(std::to_string(cfg.n_topics).size());
  for (std::size_t t = 0; t < cfg.n_topics; ++t) {
    const std::string id = padded_id('t', t + 1, width);
    std::string desc;
    for (std::size_t w = 0; w < std::min<std::size_t>(8, topic_vocab[t].size()); ++w) {
      if (w) desc += ' ';
      desc += topic_vocab[t][w];
    }
    corpus.topics.push_back(Topic{id, desc});
  }

  // Disjoint relevant sets per topic, then spam, then everything else.
  std::vector<std::size_t> order(cfg.n_docs);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Role> role(cfg.n_docs, Role::Nonrelevant);
  std::vector<std::size_t> topic_of(cfg.n_docs, 0);
  const auto per_topic = static_cast<std::size_t>(std::llround(cfg.prevalence * static_cast<double>(cfg.n_docs)));
  std::size_t cursor = 0;
  for (std::size_t t = 0; t < cfg.n_topics; ++t) {
    for (std::size_t k = 0; k < per_topic && cursor < order.size(); ++k, ++cursor) {
      role[order[cursor]] = Role::Relevant;
      topic_of[order[cursor]] = t;
    }
  }
  const auto n_spam = static_cast<std::size_t>(std::llround(cfg.spam_fraction * static_cast<double>(cfg.n_docs)));
  for (std::size_t k = 0; k < n_spam && cursor < order.size(); ++k, ++cursor) role[order[cursor]] = Role::Spam;

  const int doc_width = std::max(6, static_cast<int>(std::to_string(cfg.n_docs).size()));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> length(cfg.min_words, cfg.max_words);
  corpus.documents.reserve(cfg.n_docs);
  for (std::size_t i = 0; i < cfg.n_docs; ++i) {
    double quality = 0.0;
    switch (role[i]) {
      case Role::Relevant: quality = 0.6 + 0.4 * unit(rng); break;
      case Role::Spam: quality = 0.2 * unit(rng); break;
      case Role::Nonrelevant: quality = 0.3 + 0.4 * unit(rng); break;
    }
    const double leak = cfg.quality_signal * (1.0 - quality);
    const std::size_t len = length(rng);
    std::string text;
    for (std::size_t w = 0; w < len; ++w) {
      if (w) text += ' ';
      const double u = unit(rng);
      if (role[i] != Role::Spam && unit(rng) < leak) {
        text += spam_vocab[std::uniform_int_distribution<std::size_t>(0, spam_vocab.size() - 1)(rng)];
        continue;
      }
      switch (role[i]) {
        case Role::Relevant:
          text += u < cfg.topic_word_rate ? topic_vocab[topic_of[i]][zipf_topic(rng)]
                                          : background[zipf_background(rng)];
          break;
        case Role::Spam:
          text += u < 0.5 ? spam_vocab[std::uniform_int_distribution<std::size_t>(0, spam_vocab.size() - 1)(rng)]
                          : background[zipf_background(rng)];
          break;
        case Role::Nonrelevant:
          if (u < 0.02 && cfg.n_topics > 0) {
            const std::size_t t = std::uniform_int_distribution<std::size_t>(0, cfg.n_topics - 1)(rng);
            text += topic_vocab[t][zipf_topic(rng)];
          } else {
            text += background[zipf_background(rng)];
          }
          break;
      }
    }
    const std::string id = padded_id('d', i + 1, doc_width);
    Document d = make_document(id, std::move(text));
    d.quality = quality;
    switch (role[i]) {
      case Role::Relevant:
        d.labels.push_back(Label{Label::Kind::Relevant, corpus.topics[topic_of[i]].id});
        break;
      case Role::Spam:
        d.labels.push_back(Label{Label::Kind::Spam, ""});
        break;
      case Role::Nonrelevant:
        for (const Topic& t : corpus.topics)
          if (unit(rng) < cfg.judged_nonrelevant_fraction)
            d.labels.push_back(Label{Label::Kind::Nonrelevant, t.id});
        break;
    }
    corpus.documents.push_back(std::move(d));
  }
  return corpus;
}

std::vector<std::vector<std::string>> topic_queries(const Corpus& corpus, std::size_t per_topic,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::string>> pool;
  for (const Topic& t : corpus.topics) {
    std::vector<std::string> vocab;
    std::string w;
    for (char c : t.description + ' ') {
      if (c == ' ') {
        if (!w.empty()) vocab.push_back(std::move(w));
        w.clear();
      } else {
        w += c;
      }
    }
    std::vector<std::string> queries;
    if (vocab.empty()) {
      pool.push_back(std::move(queries));
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    for (std::size_t q = 0; q < per_topic; ++q) {
      const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
      std::string query;
      for (int k = 0; k < terms; ++k) {
        if (k) query += ' ';
        query += vocab[pick(rng)];
      }
      queries.push_back(std::move(query));
    }
    pool.push_back(std::move(queries));
  }
  return pool;
}

}  // namespace lagsim::retrieval
