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

#include "ohe/kernels/kernels.hpp"

// Scalar reference kernels. These are the semantic definition of each
// operation; the SIMD backends are tested for equivalence against them.
// Complex products are written out on doubles so the compiler is not
// held back by the library's NaN-propagating operator*.

namespace ohe::kern {
namespace {

inline void cmul_acc(double ar, double ai, double br, double bi, double& cr,
                     double& ci) {
    cr += ar * br - ai * bi;
    ci += ar * bi + ai * br;
}

void zaxpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double ar = a.real(), ai = a.imag();
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        yd[2 * i] += ar * xr - ai * xi;
        yd[2 * i + 1] += ar * xi + ai * xr;
    }
}

void zscal_scalar(std::size_t n, cplx a, cplx* x) {
    const double ar = a.real(), ai = a.imag();
    double* xd = reinterpret_cast<double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        xd[2 * i] = ar * xr - ai * xi;
        xd[2 * i + 1] = ar * xi + ai * xr;
    }
}

cplx zdotu_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double sr = 0.0, si = 0.0;
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    for (std::size_t i = 0; i < n; ++i)
        cmul_acc(xd[2 * i], xd[2 * i + 1], yd[2 * i], yd[2 * i + 1], sr, si);
    return {sr, si};
}

cplx zdotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double sr = 0.0, si = 0.0;
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    for (std::size_t i = 0; i < n; ++i)
        cmul_acc(xd[2 * i], -xd[2 * i + 1], yd[2 * i], yd[2 * i + 1], sr, si);
    return {sr, si};
}

double znrm2sq_scalar(std::size_t n, const cplx* x) {
    double s = 0.0;
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < 2 * n; ++i) s += xd[i] * xd[i];
    return s;
}

void zgemm_nn_scalar(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
                     const cplx* a, std::size_t lda, const cplx* b,
                     std::size_t ldb, cplx* c, std::size_t ldc) {
    // C[i,:] += (alpha * A[i,l]) * B[l,:]; the inner loop is an axpy over
    // a contiguous row of B, which keeps both backends structurally alike.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const cplx f = alpha * a[i * lda + l];
            if (f.real() == 0.0 && f.imag() == 0.0) continue;
            zaxpy_scalar(n, f, b + l * ldb, c + i * ldc);
        }
    }
}

void csr_spmv_scalar(std::size_t rows, const std::size_t* row_ptr,
                     const std::int32_t* col_idx, const cplx* vals,
                     const cplx* x, cplx* y) {
    const double* vd = reinterpret_cast<const double*>(vals);
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t r = 0; r < rows; ++r) {
        double sr = 0.0, si = 0.0;
        for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
            const std::size_t j = static_cast<std::size_t>(col_idx[p]);
            cmul_acc(vd[2 * p], vd[2 * p + 1], xd[2 * j], xd[2 * j + 1], sr,
                     si);
        }
        y[r] = {sr, si};
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar",        zaxpy_scalar,   zscal_scalar,
                           zdotu_scalar,    zdotc_scalar,   znrm2sq_scalar,
                           zgemm_nn_scalar, csr_spmv_scalar};
    return b;
}

}  // namespace ohe::kern
