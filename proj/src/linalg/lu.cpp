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

#include "ohe/linalg/lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ohe::la {

namespace {
const kern::Backend& K() { return kern::active(); }
}  // namespace

DenseLU lu_factor(CMat a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("lu_factor: not square");
    DenseLU f;
    f.piv.resize(n);
    f.min_pivot = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        f.piv[k] = p;
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        const cplx pivot = a(k, k);
        const double apiv = std::abs(pivot);
        f.min_pivot = std::min(f.min_pivot, apiv);
        if (apiv == 0.0) {
            // exact structural singularity: leave the column zero so the
            // solve produces inf/nan and the caller can detect it
            continue;
        }
        const cplx inv = 1.0 / pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx lik = a(i, k) * inv;
            a(i, k) = lik;
            if (lik.real() != 0.0 || lik.imag() != 0.0)
                K().zaxpy(n - k - 1, -lik, a.row(k) + k + 1, a.row(i) + k + 1);
        }
    }
    f.lu = std::move(a);
    return f;
}

void lu_solve(const DenseLU& f, cplx* b) { lu_solve_block(f, b, 1); }

void lu_solve_block(const DenseLU& f, cplx* b, std::size_t nrhs) {
    const std::size_t n = f.n();
    const CMat& lu = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t p = f.piv[k];
        if (p != k)
            for (std::size_t j = 0; j < nrhs; ++j)
                std::swap(b[k * nrhs + j], b[p * nrhs + j]);
    }
    // L y = P b (unit lower)
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx lik = lu(i, k);
            if (lik.real() != 0.0 || lik.imag() != 0.0)
                K().zaxpy(nrhs, -lik, b + k * nrhs, b + i * nrhs);
        }
    }
    // U x = y
    for (std::size_t kk = n; kk-- > 0;) {
        const cplx inv = 1.0 / lu(kk, kk);
        K().zscal(nrhs, inv, b + kk * nrhs);
        for (std::size_t i = 0; i < kk; ++i) {
            const cplx uik = lu(i, kk);
            if (uik.real() != 0.0 || uik.imag() != 0.0)
                K().zaxpy(nrhs, -uik, b + kk * nrhs, b + i * nrhs);
        }
    }
}

}  // namespace ohe::la
