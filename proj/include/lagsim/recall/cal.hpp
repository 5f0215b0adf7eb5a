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
#include "lagsim/retrieval/quality.hpp"

namespace lagsim::recall {

/// Seconds to read a document of `words` words: 0.018 l + 7.8.
double reading_time(std::size_t words);

/// B + ceil(B / 10).
std::size_t next_batch_size(std::size_t b);

/// The first n batch sizes, starting from 1.
std::vector<std::size_t> batch_schedule(std::size_t n);

struct CalParams {
  double learning_rate = 1.0;
  unsigned epochs = 4;
  std::size_t presumed_negatives = 100;
  unsigned hash_bits = 20;
  /// Scale every document's binary features to unit length.
  bool normalize = true;
};

/// Hashed features of every corpus document, computed once. Ordinals follow
/// docid order.
class FeatureStore {
 public:
  FeatureStore(const retrieval::Corpus& corpus, const CalParams& params = {});

  std::size_t size() const { return docids_.size(); }
  const std::string& docid(std::uint32_t ord) const { return docids_[ord]; }
  std::optional<std::uint32_t> ordinal(std::string_view docid) const;
  const retrieval::FeatureVector& features(std::uint32_t ord) const { return features_[ord]; }
  double scale(std::uint32_t ord) const { return scales_[ord]; }
  std::size_t words(std::uint32_t ord) const { return words_[ord]; }

  /// Features and scale of free text, such as a topic description.
  retrieval::FeatureVector featurize(std::string_view text) const;
  double scale_of(const retrieval::FeatureVector& f) const;

  const CalParams& params() const { return params_; }

 private:
  CalParams params_;
  std::vector<std::string> docids_;
  std::unordered_map<std::string, std::uint32_t> ordinal_of_;
  std::vector<retrieval::FeatureVector> features_;
  std::vector<double> scales_;
  std::vector<std::size_t> words_;
};

/// Which end of the link a CAL instance runs on; part of its RNG stream.
enum class Site : std::uint64_t { Earth = 1, Mars = 2 };

/// One continuous-active-learning instance. The seed document (the topic
/// description) is a permanent positive.
class CalState {
 public:
  CalState(const FeatureStore& store, std::string_view seed_text, std::uint64_t seed, Site site);

  void judge(std::uint32_t ord, bool relevant);
  bool judged(std::uint32_t ord) const { return labels_[ord] != kUnjudged; }
  std::size_t judged_count() const { return judged_; }

  std::size_t batch_size() const { return batch_; }
  void grow_batch() { batch_ = next_batch_size(batch_); }

  /// Retraining count so far; the step index of the next training.
  std::size_t steps() const { return steps_; }
  /// Judgments the current model was trained on.
  std::size_t trained_on() const { return trained_on_; }

  /// Retrains on the labeled set plus presumed negatives drawn from `pool`
  /// (unjudged documents) with a stream keyed by (seed, site, step).
  void train(std::span<const std::uint32_t> pool);

  /// The n best candidates by current score, ties by docid.
  std::vector<std::uint32_t> top(std::span<const std::uint32_t> candidates, std::size_t n) const;

  /// Train on `pool`, take its top B, then grow B. Empty when the pool is.
  std::vector<std::uint32_t> step(std::span<const std::uint32_t> pool);

  double score(std::uint32_t ord) const;

 private:
  static constexpr std::int8_t kUnjudged = -1;

  const FeatureStore* store_;
  retrieval::FeatureVector seed_features_;
  double seed_scale_;
  std::uint64_t seed_;
  Site site_;
  retrieval::QualityModel model_;
  std::vector<std::int8_t> labels_;
  std::vector<std::uint32_t> judged_order_;
  std::size_t judged_ = 0;
  std::size_t batch_ = 1;
  std::size_t steps_ = 0;
  std::size_t trained_on_ = 0;
};

/// Every document of `store` not yet judged by `state`, in ordinal order.
std::vector<std::uint32_t> unjudged(const CalState& state, const FeatureStore& store);

}  // namespace lagsim::recall
