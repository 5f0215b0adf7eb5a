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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lagsim/retrieval/corpus.hpp"

namespace lagsim::retrieval {

struct Posting {
  std::uint32_t doc = 0;  // ordinal; ordinals follow docid order
  std::uint32_t tf = 0;

  bool operator==(const Posting&) const = default;
};

/// Immutable inverted index. Safe to share between threads once built.
class Index {
 public:
  /// Throws InvalidArgument on an empty collection or a duplicate docid.
  static Index build(std::span<const Document> documents);
  static Index build(const Corpus& corpus) { return build(corpus.documents); }

  std::size_t num_docs() const { return docids_.size(); }
  std::size_t num_terms() const { return postings_.size(); }
  double avgdl() const { return avgdl_; }

  const std::string& docid(std::uint32_t ordinal) const { return docids_[ordinal]; }
  std::optional<std::uint32_t> ordinal(std::string_view docid) const;
  std::uint32_t doc_length(std::uint32_t ordinal) const { return lengths_[ordinal]; }
  std::span<const std::uint32_t> doc_lengths() const { return lengths_; }

  /// Postings sorted by ordinal, or an empty span for an unknown term.
  std::span<const Posting> postings(std::string_view term) const;
  std::size_t df(std::string_view term) const { return postings(term).size(); }

  /// Every indexed term, sorted.
  std::vector<std::string> terms() const;

 private:
  std::vector<std::string> docids_;
  std::unordered_map<std::string, std::uint32_t> ordinal_of_;
  std::vector<std::uint32_t> lengths_;
  std::unordered_map<std::string, std::uint32_t> term_ids_;
  std::vector<std::vector<Posting>> postings_;
  double avgdl_ = 0.0;
};

}  // namespace lagsim::retrieval
