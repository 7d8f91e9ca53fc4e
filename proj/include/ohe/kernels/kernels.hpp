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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Low-level complex arithmetic kernels used by the dense/sparse linear
// algebra layer. Every kernel exists in a scalar reference version and,
// where profitable, an AVX2+FMA version. The backend is chosen once at
// runtime from CPU capabilities; set OHE_BACKEND=scalar in the environment
// to force the reference path (useful for cross-checking results).
//
// All dense matrices are row-major. Complex numbers are interleaved
// (re, im) pairs, i.e. the standard std::complex<double> layout.

namespace ohe::kern {

using cplx = std::complex<double>;

struct Backend {
    const char* name;

    // y[i] += a * x[i]
    void (*zaxpy)(std::size_t n, cplx a, const cplx* x, cplx* y);

    // x[i] *= a
    void (*zscal)(std::size_t n, cplx a, cplx* x);

    // sum_i x[i] * y[i]   (no conjugation)
    cplx (*zdotu)(std::size_t n, const cplx* x, const cplx* y);

    // sum_i conj(x[i]) * y[i]
    cplx (*zdotc)(std::size_t n, const cplx* x, const cplx* y);

    // sum_i |x[i]|^2
    double (*znrm2sq)(std::size_t n, const cplx* x);

    // C += alpha * A * B, row-major, C is m x n, A is m x k, B is k x n.
    void (*zgemm_nn)(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
                     const cplx* a, std::size_t lda, const cplx* b,
                     std::size_t ldb, cplx* c, std::size_t ldc);

    // y = A * x for a CSR matrix with `rows` rows.
    void (*csr_spmv)(std::size_t rows, const std::size_t* row_ptr,
                     const std::int32_t* col_idx, const cplx* vals,
                     const cplx* x, cplx* y);
};

// Reference implementation; always available.
const Backend& scalar_backend();

// AVX2+FMA implementation, or nullptr when the build or the CPU lacks it.
const Backend* avx2_backend();

// The backend selected at startup (AVX2 when available unless overridden).
const Backend& active();

}  // namespace ohe::kern
