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

#include "lagsim/retrieval/index.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lagsim/retrieval/tokenizer.hpp"
#include "lagsim/util/error.hpp"

namespace lagsim::retrieval {

Index Index::build(std::span<const Document> documents) {
  if (documents.empty()) throw InvalidArgument("build_index: empty collection");
  std::vector<const Document*> sorted;
  sorted.reserve(documents.size());
  for (const Document& d : documents) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(), [](const Document* a, const Document* b) { return a->docid < b->docid; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->docid == sorted[i - 1]->docid)
      throw InvalidArgument("build_index: duplicate docid '" + sorted[i]->docid + "'");
  }

  Index idx;
  idx.docids_.reserve(sorted.size());
  idx.lengths_.reserve(sorted.size());
  std::uint64_t total_len = 0;
  std::map<std::string, std::uint32_t> tf;
  for (std::uint32_t ord = 0; ord < sorted.size(); ++ord) {
    idx.docids_.push_back(sorted[ord]->docid);
    idx.ordinal_of_.emplace(sorted[ord]->docid, ord);
    tf.clear();
    const std::vector<std::string> tokens = tokenize(sorted[ord]->text);
    for (const std::string& t : tokens) ++tf[t];
    idx.lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
    total_len += tokens.size();
    for (const auto& [term, count] : tf) {
      auto [it, fresh] = idx.term_ids_.emplace(term, static_cast<std::uint32_t>(idx.postings_.size()));
      if (fresh) idx.postings_.emplace_back();
      idx.postings_[it->second].push_back(Posting{ord, count});
    }
  }
  idx.avgdl_ = static_cast<double>(total_len) / static_cast<double>(sorted.size());
  return idx;
}

std::optional<std::uint32_t> Index::ordinal(std::string_view docid) const {
  auto it = ordinal_of_.find(std::string(docid));
  if (it == ordinal_of_.end()) return std::nullopt;
  return it->second;
}

std::span<const Posting> Index::postings(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return {};
  return postings_[it->second];
}

std::vector<std::string> Index::terms() const {
  std::vector<std::string> out;
  out.reserve(term_ids_.size());
  for (const auto& [term, id] : term_ids_) out.push_back(term);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lagsim::retrieval
