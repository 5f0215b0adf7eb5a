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

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "lagsim/simd/kernels.hpp"
#include "lagsim/util/error.hpp"

using namespace lagsim;

namespace {

struct Inputs {
  std::vector<double> table;
  std::vector<std::uint32_t> idx, doc, tf;
  std::vector<double> norm;
};

Inputs make(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(-3.0, 3.0), nm(0.2, 2.5);
  Inputs in;
  in.table.resize(257);
  for (auto& v : in.table) v = w(rng);
  in.norm.resize(97);
  for (auto& v : in.norm) v = nm(rng);
  for (std::size_t i = 0; i < n; ++i) {
    in.idx.push_back(static_cast<std::uint32_t>(rng() % in.table.size()));
    in.doc.push_back(static_cast<std::uint32_t>(rng() % in.norm.size()));
    in.tf.push_back(static_cast<std::uint32_t>(1 + rng() % 20));
  }
  return in;
}

double naive_bm25(std::uint32_t tf, double norm, double scale) { return scale * tf / (tf + norm); }

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
    const Inputs in = make(n, n + 1);
    std::vector<double> out(n);
    simd::scalar::bm25_weights(in.doc, in.tf, in.norm, 2.25, out);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(out[i] == doctest::Approx(naive_bm25(in.tf[i], in.norm[in.doc[i]], 2.25)).epsilon(1e-15));
      sum += in.table[in.idx[i]];
    }
    CHECK(simd::scalar::gather_sum(in.table, in.idx) == doctest::Approx(sum).epsilon(1e-12));
  }
}

#if defined(LAGSIM_HAVE_AVX2)
TEST_CASE("avx2 kernels are bit-identical to scalar") {
  if (!simd::avx2_available()) {
    MESSAGE("CPU lacks AVX2; equivalence not exercised");
    return;
  }
  for (std::size_t n = 0; n < 300; n += 1 + n / 7) {
    const Inputs in = make(n, 1000 + n);
    std::vector<double> a(n), b(n);
    simd::scalar::bm25_weights(in.doc, in.tf, in.norm, 1.7, a);
    simd::avx2::bm25_weights(in.doc, in.tf, in.norm, 1.7, b);
    CHECK(a == b);
    CHECK(simd::scalar::gather_sum(in.table, in.idx) == simd::avx2::gather_sum(in.table, in.idx));
  }
}
#endif

TEST_CASE("dispatcher routes to the forced variant") {
  const Inputs in = make(123, 7);
  simd::force_isa(simd::Isa::Scalar);
  CHECK(simd::active_isa() == simd::Isa::Scalar);
  const double s = simd::gather_sum(in.table, in.idx);
  if (simd::avx2_available()) {
    simd::force_isa(simd::Isa::Avx2);
    CHECK(simd::active_isa() == simd::Isa::Avx2);
    CHECK(simd::gather_sum(in.table, in.idx) == s);
  } else {
    CHECK_THROWS_AS(simd::force_isa(simd::Isa::Avx2), InvalidArgument);
  }
  CHECK(std::string(simd::to_string(simd::Isa::Scalar)) == "scalar");
}
