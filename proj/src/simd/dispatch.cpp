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

#include <atomic>

#include "lagsim/simd/kernels.hpp"
#include "lagsim/util/error.hpp"

namespace lagsim::simd {
namespace {

bool detect_avx2() {
#if defined(LAGSIM_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect_avx2() ? Isa::Avx2 : Isa::Scalar};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
  static const bool ok = detect_avx2();
  return ok;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) throw InvalidArgument("AVX2 kernels are not available");
  current().store(isa, std::memory_order_relaxed);
}

double gather_sum(std::span<const double> table, std::span<const std::uint32_t> idx) {
#if defined(LAGSIM_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::gather_sum(table, idx);
#endif
  return scalar::gather_sum(table, idx);
}

void bm25_weights(std::span<const std::uint32_t> doc, std::span<const std::uint32_t> tf,
                  std::span<const double> doc_norm, double scale, std::span<double> out) {
#if defined(LAGSIM_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::bm25_weights(doc, tf, doc_norm, scale, out);
#endif
  scalar::bm25_weights(doc, tf, doc_norm, scale, out);
}

}  // namespace lagsim::simd
