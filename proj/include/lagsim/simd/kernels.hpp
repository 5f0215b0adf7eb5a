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

#include <cstdint>
#include <span>

namespace lagsim::simd {

// Data-parallel inner loops of the retrieval stack. Every kernel has a scalar
// reference and an AVX2 variant; the dispatcher picks one at runtime. The
// scalar code mirrors the vector lane layout, so both produce bit-identical
// results.

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

/// Whether this build contains the AVX2 variants and the CPU can run them.
bool avx2_available();

/// The variant the dispatcher currently routes to.
Isa active_isa();

/// Pins the dispatcher to one variant. Throws InvalidArgument when the
/// variant is unavailable. Not thread-safe; meant for tests and benchmarks.
void force_isa(Isa isa);

/// Sum of table[idx[i]] over all i. Indices must be in range.
double gather_sum(std::span<const double> table, std::span<const std::uint32_t> idx);

/// Per-posting BM25 contribution:
///   out[i] = scale * tf[i] / (tf[i] + doc_norm[doc[i]])
/// where doc_norm[d] = k1 * (1 - b + b * len(d) / avgdl) and scale = idf * (k1 + 1).
void bm25_weights(std::span<const std::uint32_t> doc, std::span<const std::uint32_t> tf,
                  std::span<const double> doc_norm, double scale, std::span<double> out);

namespace scalar {
double gather_sum(std::span<const double> table, std::span<const std::uint32_t> idx);
void bm25_weights(std::span<const std::uint32_t> doc, std::span<const std::uint32_t> tf,
                  std::span<const double> doc_norm, double scale, std::span<double> out);
}  // namespace scalar

#if defined(LAGSIM_HAVE_AVX2)
namespace avx2 {
double gather_sum(std::span<const double> table, std::span<const std::uint32_t> idx);
void bm25_weights(std::span<const std::uint32_t> doc, std::span<const std::uint32_t> tf,
                  std::span<const double> doc_norm, double scale, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace lagsim::simd
