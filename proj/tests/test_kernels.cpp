// Copyright 2026 The ohe Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "ohe/kernels/kernels.hpp"

// Equivalence of every SIMD backend against the scalar reference on
// randomized inputs, including the awkward tail lengths.

using ohe::kern::cplx;

namespace {

std::mt19937_64 rng(20260808u);

std::vector<cplx> random_vec(std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = {d(rng), d(rng)};
    return v;
}

double rel_err(cplx a, cplx b) {
    return std::abs(a - b) / std::max(1.0, std::abs(a));
}

}  // namespace

TEST_CASE("scalar kernel sanity") {
    const auto& k = ohe::kern::scalar_backend();
    std::vector<cplx> x = {{1, 2}, {3, -1}};
    std::vector<cplx> y = {{0, 0}, {1, 1}};
    k.zaxpy(2, {2, 0}, x.data(), y.data());
    CHECK(y[0] == cplx{2, 4});
    CHECK(y[1] == cplx{7, -1});
    CHECK(k.zdotu(2, x.data(), x.data()) == cplx{-3 + 8, 4 - 6});
    CHECK(k.zdotc(2, x.data(), x.data()) == cplx{1 + 4 + 9 + 1, 0});
    CHECK(k.znrm2sq(2, x.data()) == doctest::Approx(15.0));
}

TEST_CASE("avx2 backend matches the scalar reference") {
    const auto* avx = ohe::kern::avx2_backend();
    if (avx == nullptr) {
        MESSAGE("AVX2 backend not built; skipping equivalence checks");
        return;
    }
    const auto& ref = ohe::kern::scalar_backend();

    for (const std::size_t n : {1u, 2u, 3u, 7u, 64u, 129u, 1000u}) {
        const auto x = random_vec(n);
        auto y1 = random_vec(n);
        auto y2 = y1;
        const cplx a{0.37, -1.2};
        ref.zaxpy(n, a, x.data(), y1.data());
        avx->zaxpy(n, a, x.data(), y2.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y1[i] - y2[i]) < 1e-14);

        auto s1 = y1;
        auto s2 = y1;
        ref.zscal(n, a, s1.data());
        avx->zscal(n, a, s2.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(s1[i] - s2[i]) < 1e-14);

        const auto w = random_vec(n);
        CHECK(rel_err(ref.zdotu(n, x.data(), w.data()),
                      avx->zdotu(n, x.data(), w.data())) < 1e-13);
        CHECK(rel_err(ref.zdotc(n, x.data(), w.data()),
                      avx->zdotc(n, x.data(), w.data())) < 1e-13);
        CHECK(ref.znrm2sq(n, x.data()) ==
              doctest::Approx(avx->znrm2sq(n, x.data())).epsilon(1e-13));
    }
}

TEST_CASE("gemm equivalence on odd shapes") {
    const auto* avx = ohe::kern::avx2_backend();
    if (avx == nullptr) return;
    const auto& ref = ohe::kern::scalar_backend();
    for (const auto [m, n, k] :
         {std::array<std::size_t, 3>{1, 1, 1},
          std::array<std::size_t, 3>{3, 5, 7},
          std::array<std::size_t, 3>{16, 16, 16},
          std::array<std::size_t, 3>{33, 17, 21}}) {
        const auto a = random_vec(m * k);
        const auto b = random_vec(k * n);
        auto c1 = random_vec(m * n);
        auto c2 = c1;
        const cplx alpha{-0.7, 0.25};
        ref.zgemm_nn(m, n, k, alpha, a.data(), k, b.data(), n, c1.data(), n);
        avx->zgemm_nn(m, n, k, alpha, a.data(), k, b.data(), n, c2.data(), n);
        for (std::size_t i = 0; i < m * n; ++i)
            CHECK(std::abs(c1[i] - c2[i]) < 1e-12);
    }
}

TEST_CASE("csr spmv equivalence") {
    const auto* avx = ohe::kern::avx2_backend();
    if (avx == nullptr) return;
    const auto& ref = ohe::kern::scalar_backend();
    std::uniform_int_distribution<int> cols(0, 99);
    std::uniform_real_distribution<double> d(-1.0, 1.0);

    const std::size_t rows = 80, n = 100;
    std::vector<std::size_t> rp{0};
    std::vector<std::int32_t> ci;
    std::vector<cplx> vals;
    for (std::size_t r = 0; r < rows; ++r) {
        const int nnz = cols(rng) % 9;  // includes empty rows
        for (int j = 0; j < nnz; ++j) {
            ci.push_back(cols(rng));
            vals.push_back({d(rng), d(rng)});
        }
        rp.push_back(ci.size());
    }
    const auto x = random_vec(n);
    std::vector<cplx> y1(rows), y2(rows);
    ref.csr_spmv(rows, rp.data(), ci.data(), vals.data(), x.data(), y1.data());
    avx->csr_spmv(rows, rp.data(), ci.data(), vals.data(), x.data(),
                  y2.data());
    for (std::size_t i = 0; i < rows; ++i)
        CHECK(std::abs(y1[i] - y2[i]) < 1e-13);
}

TEST_CASE("dispatch table selects a valid backend") {
    const auto& b = ohe::kern::active();
    CHECK(b.zaxpy != nullptr);
    CHECK(b.zgemm_nn != nullptr);
    MESSAGE("active kernel backend: ", std::string(b.name));
}
