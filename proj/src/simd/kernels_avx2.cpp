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

#include <immintrin.h>

#include "lagsim/simd/kernels.hpp"

namespace lagsim::simd::avx2 {

double gather_sum(std::span<const double> table, std::span<const std::uint32_t> idx) {
  const std::size_t n = idx.size();
  const std::size_t body = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx.data() + i));
    acc = _mm256_add_pd(acc, _mm256_i32gather_pd(table.data(), vi, 8));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = body; i < n; ++i) sum += table[idx[i]];
  return sum;
}

void bm25_weights(std::span<const std::uint32_t> doc, std::span<const std::uint32_t> tf,
                  std::span<const double> doc_norm, double scale, std::span<double> out) {
  const std::size_t n = doc.size();
  const std::size_t body = n & ~std::size_t{3};
  const __m256d vscale = _mm256_set1_pd(scale);
  for (std::size_t i = 0; i < body; i += 4) {
    const __m128i vd = _mm_loadu_si128(reinterpret_cast<const __m128i*>(doc.data() + i));
    const __m128i vt = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tf.data() + i));
    // Term frequencies stay far below 2^31, so the signed conversion is exact.
    const __m256d f = _mm256_cvtepi32_pd(vt);
    const __m256d norm = _mm256_i32gather_pd(doc_norm.data(), vd, 8);
    const __m256d w = _mm256_mul_pd(vscale, _mm256_div_pd(f, _mm256_add_pd(f, norm)));
    _mm256_storeu_pd(out.data() + i, w);
  }
  for (std::size_t i = body; i < n; ++i) {
    const double f = static_cast<double>(tf[i]);
    out[i] = scale * (f / (f + doc_norm[doc[i]]));
  }
}

}  // namespace lagsim::simd::avx2
