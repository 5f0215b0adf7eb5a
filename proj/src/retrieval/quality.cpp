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

#include "lagsim/retrieval/quality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "lagsim/simd/kernels.hpp"
#include "lagsim/util/error.hpp"

namespace lagsim::retrieval {

FeatureVector char4gram_features(std::string_view text, unsigned hash_bits) {
  if (hash_bits == 0 || hash_bits > 31) throw InvalidArgument("hash_bits must be in [1, 31]");
  const std::uint32_t mask = (std::uint32_t{1} << hash_bits) - 1;
  FeatureVector out;
  if (text.size() >= 4) out.reserve(text.size() - 3);
  for (std::size_t i = 0; i + 4 <= text.size(); ++i) {
    std::uint32_t h = 2166136261u;
    for (std::size_t j = i; j < i + 4; ++j) {
      h ^= static_cast<unsigned char>(text[j]);
      h *= 16777619u;
    }
    out.push_back(h & mask);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QualityModel::QualityModel(unsigned hash_bits)
    : hash_bits_(hash_bits), weights_(std::size_t{1} << hash_bits, 0.0), is_touched_(weights_.size(), false) {
  if (hash_bits == 0 || hash_bits > 31) throw InvalidArgument("hash_bits must be in [1, 31]");
}

double QualityModel::score(const FeatureVector& features, double scale) const {
  return bias_ + scale * simd::gather_sum(weights_, features);
}

double QualityModel::score_text(std::string_view text) const {
  return score(char4gram_features(text, hash_bits_));
}

void QualityModel::update(const FeatureVector& features, bool positive, double learning_rate, double scale) {
  const double p = 1.0 / (1.0 + std::exp(-score(features, scale)));
  const double step = learning_rate * ((positive ? 1.0 : 0.0) - p);
  const double w_step = step * scale;
  for (std::uint32_t f : features) {
    weights_[f] += w_step;
    if (!is_touched_[f]) {
      is_touched_[f] = true;
      touched_.push_back(f);
    }
  }
  bias_ += step;
}

void QualityModel::reset() {
  for (std::uint32_t f : touched_) {
    weights_[f] = 0.0;
    is_touched_[f] = false;
  }
  touched_.clear();
  bias_ = 0.0;
}

void train_linear(QualityModel& model, std::span<const TrainingExample> examples, const QualityParams& params) {
  const bool has_pos = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.positive; });
  const bool has_neg = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return !e.positive; });
  if (!has_pos || !has_neg) throw InvalidArgument("training needs both positive and negative examples");
  model.reset();
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(params.seed);
  for (unsigned epoch = 0; epoch < params.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) model.update(*examples[i].features, examples[i].positive, params.learning_rate, examples[i].scale);
  }
}

QualityModel train_quality(std::span<const Document> positives, std::span<const Document> negatives,
                           const QualityParams& params) {
  std::vector<FeatureVector> features;
  features.reserve(positives.size() + negatives.size());
  for (const Document& d : positives) features.push_back(char4gram_features(d.text, params.hash_bits));
  for (const Document& d : negatives) features.push_back(char4gram_features(d.text, params.hash_bits));
  std::vector<TrainingExample> examples;
  examples.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) examples.push_back({&features[i], i < positives.size()});
  QualityModel model(params.hash_bits);
  train_linear(model, examples, params);
  return model;
}

std::vector<Document> sample_documents(std::span<const Document> docs, std::size_t n, std::uint64_t seed) {
  if (n >= docs.size()) return {docs.begin(), docs.end()};
  std::vector<std::size_t> idx(docs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  std::vector<Document> out;
  out.reserve(n);
  for (std::size_t i : idx) out.push_back(docs[i]);
  return out;
}

QualityTrainingSet quality_training_set(const Corpus& corpus, std::size_t negative_sample, std::uint64_t seed) {
  QualityTrainingSet set;
  std::vector<Document> judged;
  for (const Document& d : corpus.documents) {
    if (d.relevant_to_any())
      set.positives.push_back(d);
    else if (d.spam())
      set.negatives.push_back(d);
    else if (d.judged_nonrelevant())
      judged.push_back(d);
  }
  for (Document& d : sample_documents(judged, negative_sample, seed)) set.negatives.push_back(std::move(d));
  return set;
}

double auc(std::span<const double> positive_scores, std::span<const double> negative_scores) {
  if (positive_scores.empty() || negative_scores.empty()) throw InvalidArgument("auc needs both classes");
  std::vector<double> neg(negative_scores.begin(), negative_scores.end());
  std::sort(neg.begin(), neg.end());
  double wins = 0.0;
  for (double p : positive_scores) {
    const auto lo = std::lower_bound(neg.begin(), neg.end(), p);
    const auto hi = std::upper_bound(lo, neg.end(), p);
    wins += static_cast<double>(lo - neg.begin()) + 0.5 * static_cast<double>(hi - lo);
  }
  return wins / (static_cast<double>(positive_scores.size()) * static_cast<double>(neg.size()));
}

std::vector<std::string> static_rank(const QualityModel& model, const Corpus& corpus) {
  std::vector<std::pair<double, const std::string*>> scored;
  scored.reserve(corpus.documents.size());
  for (const Document& d : corpus.documents) scored.emplace_back(model.score_text(d.text), &d.docid);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  });
  std::vector<std::string> out;
  out.reserve(scored.size());
  for (const auto& [s, id] : scored) out.push_back(*id);
  return out;
}

DocSet select_cache(std::span<const std::string> ranked, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidArgument("cache fraction must be in [0, 1]");
  const auto n = std::min(ranked.size(),
                          static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ranked.size()) + 1e-9)));
  return DocSet(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n));
}

DocSet select_cache(const QualityModel& model, const Corpus& corpus, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidArgument("cache fraction must be in [0, 1]");
  return select_cache(static_rank(model, corpus), fraction);
}

std::optional<double> HitRatios::clicked_ratio() const {
  if (clicked_total == 0) return std::nullopt;
  return static_cast<double>(clicked_hits) / static_cast<double>(clicked_total);
}

std::optional<double> HitRatios::serp_ratio() const {
  if (serp_total == 0) return std::nullopt;
  return static_cast<double>(serp_hits) / static_cast<double>(serp_total);
}

HitRatios cache_hit_ratios(const sessions::SessionLog& log, const DocSet& cache) {
  HitRatios r;
  for (const sessions::Session& s : log.sessions) {
    std::set<std::string> clicked, shown;
    for (const sessions::Interaction& it : s.interactions) {
      for (const auto& res : it.results) shown.insert(res.docid);
      for (const auto& c : it.clicks) clicked.insert(c.docid);
    }
    for (const auto& d : clicked) {
      ++r.clicked_total;
      r.clicked_hits += cache.count(d);
    }
    for (const auto& d : shown) {
      ++r.serp_total;
      r.serp_hits += cache.count(d);
    }
  }
  return r;
}

}  // namespace lagsim::retrieval
