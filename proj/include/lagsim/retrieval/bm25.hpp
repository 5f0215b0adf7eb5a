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
#include <string_view>
#include <vector>

#include "lagsim/retrieval/index.hpp"

namespace lagsim::retrieval {

/// Okapi BM25 parameters. The defaults are the usual tuning for short web
/// queries (k1 = 0.9, b = 0.4).
struct Bm25Params {
  double k1 = 0.9;
  double b = 0.4;
};

/// Always-positive idf: ln(1 + (N - df + 0.5) / (df + 0.5)).
double bm25_idf(std::size_t num_docs, std::size_t df);

/// Contribution of one query term to one document.
double bm25_term_score(double tf, double doc_len, double avgdl, double idf, const Bm25Params& params);

struct ScoredDoc {
  std::string docid;
  double score = 0.0;

  bool operator==(const ScoredDoc&) const = default;
};

/// Term-at-a-time BM25 over an Index. Precomputes per-document length
/// normalization once, so reuse a scorer across many queries.
class Bm25Scorer {
 public:
  explicit Bm25Scorer(const Index& index, Bm25Params params = {});

  /// Documents matching at least one query term, by descending score with
  /// ties broken by ascending docid; at most k of them. Repeated query terms
  /// count repeatedly. An empty query gives an empty list.
  std::vector<ScoredDoc> search(std::string_view query, std::size_t k) const;

  /// Exactly min(k, N) docids: the ranked matches, then non-matching
  /// documents in docid order. Models shipping "the top k documents".
  std::vector<std::string> top_k_padded(std::string_view query, std::size_t k) const;

  const Index& index() const { return *index_; }
  const Bm25Params& params() const { return params_; }

 private:
  std::vector<double> accumulate(std::string_view query, std::vector<std::uint32_t>& touched) const;

  const Index* index_;
  Bm25Params params_;
  std::vector<double> norm_;
};

std::vector<ScoredDoc> bm25_search(const Index& index, std::string_view query, std::size_t k,
                                   Bm25Params params = {});

}  // namespace lagsim::retrieval
