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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lagsim::retrieval {

using DocSet = std::unordered_set<std::string>;

struct Label {
  enum class Kind { Relevant, Nonrelevant, Spam };
  Kind kind = Kind::Relevant;
  /// Empty for spam.
  std::string topic;

  bool operator==(const Label&) const = default;
};

struct Document {
  std::string docid;
  std::string text;
  /// Whitespace-separated token count of `text`; feeds the reading-time model.
  std::size_t word_count = 0;
  std::vector<Label> labels;
  std::optional<double> quality;

  bool relevant_to(std::string_view topic) const;
  bool judged_nonrelevant() const;
  bool spam() const;
  bool relevant_to_any() const;

  bool operator==(const Document&) const = default;
};

std::size_t whitespace_word_count(std::string_view text);
Document make_document(std::string docid, std::string text);

struct Topic {
  std::string id;
  std::string description;

  bool operator==(const Topic&) const = default;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<Topic> topics;

  const Document* find(std::string_view docid) const;
  const Topic* topic(std::string_view id) const;
};

/// Line-delimited JSON. Each line is one record:
///   {"type":"topic","id":"t1","description":"..."}
///   {"type":"doc","docid":"d001","text":"...","labels":[{"kind":"relevant","topic":"t1"}],"quality":0.8}
/// "type" defaults to "doc"; "labels" and "quality" are optional. Label kinds
/// are relevant, nonrelevant and spam. Throws ParseError naming the line.
Corpus read_corpus_jsonl(std::string_view text);
std::string write_corpus_jsonl(const Corpus& corpus);

/// topic -> docid -> grade. Grades > 0 are relevant.
using Qrels = std::map<std::string, std::map<std::string, int>>;

/// TREC qrels: "topic iteration docid grade" per line.
Qrels read_qrels(std::string_view text);
std::string write_qrels(const Qrels& qrels);
Qrels qrels_from_corpus(const Corpus& corpus);

struct CorpusGenConfig {
  std::size_t n_docs = 2000;
  std::size_t n_topics = 5;
  /// Fraction of the corpus relevant to each topic. Topics are disjoint.
  double prevalence = 0.05;
  double spam_fraction = 0.10;
  /// Fraction of the remaining documents judged non-relevant per topic.
  double judged_nonrelevant_fraction = 0.10;
  std::size_t min_words = 40;
  std::size_t max_words = 400;
  /// Probability that a word of a relevant document is drawn from its topic's vocabulary.
  double topic_word_rate = 0.2;
  /// Rate of spam vocabulary in a non-spam document of quality 0, falling
  /// linearly to none at quality 1. Makes quality visible to a content model.
  double quality_signal = 0.25;
  std::size_t background_vocabulary = 4000;
  std::size_t topic_vocabulary = 40;
  std::uint64_t seed = 42;
};

/// Seeded synthetic collection. Documents are in "chronological" order with
/// zero-padded docids, so the first documents make a natural cache seed.
Corpus generate_corpus(const CorpusGenConfig& config);

/// Queries a searcher might issue for each topic, built from topic vocabulary.
std::vector<std::vector<std::string>> topic_queries(const Corpus& corpus, std::size_t per_topic,
                                                    std::uint64_t seed);

/// The chronologically first ceil(fraction * N) documents.
std::vector<std::string> chronological_prefix(const Corpus& corpus, double fraction);

}  // namespace lagsim::retrieval
