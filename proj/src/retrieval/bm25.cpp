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

#include "lagsim/retrieval/bm25.hpp"

#include <algorithm>
#include <cmath>

#include "lagsim/retrieval/tokenizer.hpp"
#include "lagsim/simd/kernels.hpp"

namespace lagsim::retrieval {

double bm25_idf(std::size_t num_docs, std::size_t df) {
  const double n = static_cast<double>(num_docs);
  const double f = static_cast<double>(df);
  return std::log(1.0 + (n - f + 0.5) / (f + 0.5));
}

double bm25_term_score(double tf, double doc_len, double avgdl, double idf, const Bm25Params& p) {
  const double norm = p.k1 * (1.0 - p.b + p.b * doc_len / avgdl);
  return idf * (p.k1 + 1.0) * (tf / (tf + norm));
}

Bm25Scorer::Bm25Scorer(const Index& index, Bm25Params params)
    : index_(&index), params_(params), norm_(index.num_docs()) {
  const double avgdl = index.avgdl() > 0.0 ? index.avgdl() : 1.0;
  for (std::size_t d = 0; d < norm_.size(); ++d)
    norm_[d] = params_.k1 * (1.0 - params_.b + params_.b * index.doc_length(static_cast<std::uint32_t>(d)) / avgdl);
}

std::vector<double> Bm25Scorer::accumulate(std::string_view query, std::vector<std::uint32_t>& touched) const {
  std::vector<double> acc(index_->num_docs(), 0.0);
  std::vector<std::uint32_t> docs, tfs;
  std::vector<double> weights;
  for (const std::string& term : tokenize(query)) {
    const auto postings = index_->postings(term);
    if (postings.empty()) continue;
    const double scale = bm25_idf(index_->num_docs(), postings.size()) * (params_.k1 + 1.0);
    docs.resize(postings.size());
    tfs.resize(postings.size());
    weights.resize(postings.size());
    for (std::size_t i = 0; i < postings.size(); ++i) {
      docs[i] = postings[i].doc;
      tfs[i] = postings[i].tf;
    }
    simd::bm25_weights(docs, tfs, norm_, scale, weights);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (acc[docs[i]] == 0.0) touched.push_back(docs[i]);
      acc[docs[i]] += weights[i];
    }
  }
  return acc;
}

std::vector<ScoredDoc> Bm25Scorer::search(std::string_view query, std::size_t k) const {
  std::vector<std::uint32_t> touched;
  const std::vector<double> acc = accumulate(query, touched);
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (acc[a] != acc[b]) return acc[a] > acc[b];
    return a < b;  // ordinals follow docid order
  };
  const std::size_t n = std::min(k, touched.size());
  std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(n), touched.end(), better);
  std::vector<ScoredDoc> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(ScoredDoc{index_->docid(touched[i]), acc[touched[i]]});
  return out;
}

std::vector<std::string> Bm25Scorer::top_k_padded(std::string_view query, std::size_t k) const {
  std::vector<std::string> out;
  const std::size_t want = std::min(k, index_->num_docs());
  out.reserve(want);
  std::vector<bool> taken(index_->num_docs(), false);
  for (ScoredDoc& d : search(query, want)) {
    taken[*index_->ordinal(d.docid)] = true;
    out.push_back(std::move(d.docid));
  }
  for (std::uint32_t ord = 0; out.size() < want && ord < index_->num_docs(); ++ord)
    if (!taken[ord]) out.push_back(index_->docid(ord));
  return out;
}

std::vector<ScoredDoc> bm25_search(const Index& index, std::string_view query, std::size_t k, Bm25Params params) {
  return Bm25Scorer(index, params).search(query, k);
}

}  // namespace lagsim::retrieval
