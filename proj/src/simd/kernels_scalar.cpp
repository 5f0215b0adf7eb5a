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

#include "lagsim/simd/kernels.hpp"

namespace lagsim::simd::scalar {

// Four independent partial sums, one per AVX2 double lane, folded as
// (l0 + l1) + (l2 + l3); the tail is added afterwards in order.
double gather_sum(std::span<const double> table, std::span<const std::uint32_t> idx) {
  const std::size_t n = idx.size();
  const std::size_t body = n & ~std::size_t{3};
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < body; i += 4) {
    lane[0] += table[idx[i]];
    lane[1] += table[idx[i + 1]];
    lane[2] += table[idx[i + 2]];
    lane[3] += table[idx[i + 3]];
  }
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = body; i < n; ++i) sum += table[idx[i]];
  return sum;
}

void bm25_weights(std::span<const std::uint32_t> doc, std::span<const std::uint32_t> tf,
                  std::span<const double> doc_norm, double scale, std::span<double> out) {
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const double f = static_cast<double>(tf[i]);
    out[i] = scale * (f / (f + doc_norm[doc[i]]));
  }
}

}  // namespace lagsim::simd::scalar
