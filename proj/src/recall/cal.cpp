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

#include "lagsim/recall/cal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lagsim/util/error.hpp"

namespace lagsim::recall {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double reading_time(std::size_t words) { return 0.018 * static_cast<double>(words) + 7.8; }

std::size_t next_batch_size(std::size_t b) { return b + (b + 9) / 10; }

std::vector<std::size_t> batch_schedule(std::size_t n) {
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t b = 1; out.size() < n; b = next_batch_size(b)) out.push_back(b);
  return out;
}

FeatureStore::FeatureStore(const retrieval::Corpus& corpus, const CalParams& params) : params_(params) {
  std::vector<const retrieval::Document*> docs;
  docs.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) docs.push_back(&d);
  std::sort(docs.begin(), docs.end(), [](auto* a, auto* b) { return a->docid < b->docid; });
  for (const auto* d : docs) {
    if (!ordinal_of_.emplace(d->docid, static_cast<std::uint32_t>(docids_.size())).second)
      throw InvalidArgument("duplicate docid '" + d->docid + "'");
    docids_.push_back(d->docid);
    features_.push_back(featurize(d->text));
    scales_.push_back(scale_of(features_.back()));
    words_.push_back(d->word_count);
  }
}

std::optional<std::uint32_t> FeatureStore::ordinal(std::string_view docid) const {
  auto it = ordinal_of_.find(std::string(docid));
  if (it == ordinal_of_.end()) return std::nullopt;
  return it->second;
}

retrieval::FeatureVector FeatureStore::featurize(std::string_view text) const {
  return retrieval::char4gram_features(text, params_.hash_bits);
}

double FeatureStore::scale_of(const retrieval::FeatureVector& f) const {
  if (!params_.normalize || f.empty()) return 1.0;
  return 1.0 / std::sqrt(static_cast<double>(f.size()));
}

CalState::CalState(const FeatureStore& store, std::string_view seed_text, std::uint64_t seed, Site site)
    : store_(&store),
      seed_features_(store.featurize(seed_text)),
      seed_scale_(store.scale_of(seed_features_)),
      seed_(seed),
      site_(site),
      model_(store.params().hash_bits),
      labels_(store.size(), kUnjudged) {}

void CalState::judge(std::uint32_t ord, bool relevant) {
  if (ord >= labels_.size()) throw InvalidArgument("judged document out of range");
  if (judged(ord)) throw InvalidArgument("document '" + store_->docid(ord) + "' judged twice");
  labels_[ord] = relevant ? 1 : 0;
  judged_order_.push_back(ord);
  ++judged_;
}

void CalState::train(std::span<const std::uint32_t> pool) {
  const CalParams& p = store_->params();
  std::uint64_t stream = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(site_) ^ splitmix64(steps_)));
  std::mt19937_64 rng(stream);

  // Presumed negatives: a partial Fisher-Yates draw from the pool.
  std::vector<std::uint32_t> sample(pool.begin(), pool.end());
  const std::size_t n = std::min(p.presumed_negatives, sample.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, sample.size() - 1);
    std::swap(sample[i], sample[pick(rng)]);
  }
  sample.resize(n);

  std::vector<retrieval::TrainingExample> examples;
  examples.reserve(1 + judged_order_.size() + n);
  examples.push_back({&seed_features_, true, seed_scale_});
  for (std::uint32_t d : judged_order_) examples.push_back({&store_->features(d), labels_[d] == 1, store_->scale(d)});
  for (std::uint32_t d : sample) examples.push_back({&store_->features(d), false, store_->scale(d)});

  model_.reset();
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (unsigned e = 0; e < p.epochs; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order)
      model_.update(*examples[i].features, examples[i].positive, p.learning_rate, examples[i].scale);
  }
  ++steps_;
  trained_on_ = judged_;
}

double CalState::score(std::uint32_t ord) const { return model_.score(store_->features(ord), store_->scale(ord)); }

std::vector<std::uint32_t> CalState::top(std::span<const std::uint32_t> candidates, std::size_t n) const {
  std::vector<std::pair<double, std::uint32_t>> scored;
  scored.reserve(candidates.size());
  for (std::uint32_t d : candidates) scored.emplace_back(score(d), d);
  n = std::min(n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                    });
  std::vector<std::uint32_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(scored[i].second);
  return out;
}

std::vector<std::uint32_t> CalState::step(std::span<const std::uint32_t> pool) {
  if (pool.empty()) return {};
  train(pool);
  std::vector<std::uint32_t> batch = top(pool, batch_);
  grow_batch();
  return batch;
}

std::vector<std::uint32_t> unjudged(const CalState& state, const FeatureStore& store) {
  std::vector<std::uint32_t> out;
  out.reserve(store.size() - std::min(store.size(), state.judged_count()));
  for (std::uint32_t d = 0; d < store.size(); ++d)
    if (!state.judged(d)) out.push_back(d);
  return out;
}

}  // namespace lagsim::recall
