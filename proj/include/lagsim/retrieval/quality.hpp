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
#include <vector>

#include "lagsim/retrieval/corpus.hpp"
#include "lagsim/sessions/log.hpp"

namespace lagsim::retrieval {

/// Sorted, de-duplicated hashed feature indices of a text.
using FeatureVector = std::vector<std::uint32_t>;

/// Binary features: every overlapping 4-byte window of the text, hashed
/// (FNV-1a) into 2^hash_bits buckets.
FeatureVector char4gram_features(std::string_view text, unsigned hash_bits);

struct QualityParams {
  double learning_rate = 0.002;
  unsigned hash_bits = 20;
  /// Passes over the training set. One pass is the standard recipe.
  unsigned epochs = 1;
  /// Shuffles the training order.
  std::uint64_t seed = 1;
};

/// Linear classifier over hashed character 4-grams, trained online with
/// logistic loss. Higher scores mean higher quality (or relevance).
class QualityModel {
 public:
  explicit QualityModel(unsigned hash_bits = 20);

  unsigned hash_bits() const { return hash_bits_; }
  double bias() const { return bias_; }
  std::span<const double> weights() const { return weights_; }

  /// Every feature has value `scale` (1 for plain binary features).
  double score(const FeatureVector& features, double scale = 1.0) const;
  double score_text(std::string_view text) const;

  /// One stochastic gradient step of logistic loss.
  void update(const FeatureVector& features, bool positive, double learning_rate, double scale = 1.0);

  /// Zeroes every weight touched since the last reset.
  void reset();

 private:
  unsigned hash_bits_;
  double bias_ = 0.0;
  std::vector<double> weights_;
  std::vector<std::uint32_t> touched_;
  std::vector<bool> is_touched_;
};

struct TrainingExample {
  const FeatureVector* features = nullptr;
  bool positive = false;
  double scale = 1.0;
};

/// Trains `model` in place (after reset) on the examples in a seeded random
/// order. Throws InvalidArgument unless both classes are present.
void train_linear(QualityModel& model, std::span<const TrainingExample> examples,
                  const QualityParams& params);

/// Content-only static ranker. Positives are documents judged relevant for
/// any topic; negatives are spam plus a sample of judged non-relevant pages.
QualityModel train_quality(std::span<const Document> positives, std::span<const Document> negatives,
                           const QualityParams& params = {});

/// Reproducible sample of n documents (all of them when n >= size).
std::vector<Document> sample_documents(std::span<const Document> docs, std::size_t n,
                                       std::uint64_t seed);

/// Splits a labeled corpus into quality-training classes. `negative_sample`
/// bounds the number of judged non-relevant documents drawn.
struct QualityTrainingSet {
  std::vector<Document> positives;
  std::vector<Document> negatives;
};
QualityTrainingSet quality_training_set(const Corpus& corpus, std::size_t negative_sample,
                                        std::uint64_t seed);

/// Area under the ROC curve; ties count one half.
double auc(std::span<const double> positive_scores, std::span<const double> negative_scores);

/// Static-rank order of the whole corpus: descending score, ties by docid.
std::vector<std::string> static_rank(const QualityModel& model, const Corpus& corpus);

/// The top floor(fraction * N) documents of the static rank; everything at 1.
/// Throws InvalidArgument for a fraction outside [0, 1].
DocSet select_cache(const QualityModel& model, const Corpus& corpus, double fraction);
DocSet select_cache(std::span<const std::string> ranked, double fraction);

struct HitRatios {
  std::size_t clicked_total = 0;
  std::size_t clicked_hits = 0;
  std::size_t serp_total = 0;
  std::size_t serp_hits = 0;

  /// Absent when the log has no clicks (or no results).
  std::optional<double> clicked_ratio() const;
  std::optional<double> serp_ratio() const;
};

/// Cache hit ratios over a log. Each docid counts once per session in which
/// it was clicked (or shown on a SERP).
HitRatios cache_hit_ratios(const sessions::SessionLog& log, const DocSet& cache);

}  // namespace lagsim::retrieval
