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

#include <immintrin.h>

// AVX2+FMA kernels. A __m256d carries two interleaved complex doubles
// [re0, im0, re1, im1]. Complex multiply-accumulate uses the permute +
// fmaddsub pattern: with va = broadcast(a.re), vb = broadcast(a.im),
// xs = swap(re,im lanes of x),
//   fmaddsub(va, x, vb*xs) = [a.re*xr - a.im*xi, a.re*xi + a.im*xr, ...]
// which is exactly a*x in both lanes.
//
// This translation unit is compiled with -mavx2 -mfma; callers reach it
// only through the dispatch table after a cpuid check.

namespace ohe::kern {
namespace {

inline __m256d swap_lanes(__m256d v) { return _mm256_permute_pd(v, 0x5); }

void zaxpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const __m256d va = _mm256_set1_pd(a.real());
    const __m256d vb = _mm256_set1_pd(a.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        const __m256d prod =
            _mm256_fmaddsub_pd(va, vx, _mm256_mul_pd(vb, swap_lanes(vx)));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(vy, prod));
    }
    for (; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        yd[2 * i] += a.real() * xr - a.imag() * xi;
        yd[2 * i + 1] += a.real() * xi + a.imag() * xr;
    }
}

void zscal_avx2(std::size_t n, cplx a, cplx* x) {
    const __m256d va = _mm256_set1_pd(a.real());
    const __m256d vb = _mm256_set1_pd(a.imag());
    double* xd = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        const __m256d prod =
            _mm256_fmaddsub_pd(va, vx, _mm256_mul_pd(vb, swap_lanes(vx)));
        _mm256_storeu_pd(xd + 2 * i, prod);
    }
    for (; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        xd[2 * i] = a.real() * xr - a.imag() * xi;
        xd[2 * i + 1] = a.real() * xi + a.imag() * xr;
    }
}

// Horizontal reductions for the dot products. accP holds elementwise
// products of matching lanes (re*re in even, im*im in odd slots), accS
// the swapped products (im*re even, re*im odd).
inline double reduce_even_minus_odd(__m256d v) {
    const __m256d h = _mm256_hsub_pd(v, v);  // [e0-o0, ., e1-o1, .]
    return _mm256_cvtsd_f64(h) + _mm_cvtsd_f64(_mm256_extractf128_pd(h, 1));
}

inline double reduce_all(__m256d v) {
    const __m256d h = _mm256_hadd_pd(v, v);
    return _mm256_cvtsd_f64(h) + _mm_cvtsd_f64(_mm256_extractf128_pd(h, 1));
}

cplx zdotu_avx2(std::size_t n, const cplx* x, const cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_p = _mm256_setzero_pd();
    __m256d acc_s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        acc_p = _mm256_fmadd_pd(vx, vy, acc_p);
        acc_s = _mm256_fmadd_pd(swap_lanes(vx), vy, acc_s);
    }
    double sr = reduce_even_minus_odd(acc_p);  // xr*yr - xi*yi
    double si = reduce_all(acc_s);             // xi*yr + xr*yi
    for (; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        const double yr = yd[2 * i], yi = yd[2 * i + 1];
        sr += xr * yr - xi * yi;
        si += xr * yi + xi * yr;
    }
    return {sr, si};
}

cplx zdotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_p = _mm256_setzero_pd();
    __m256d acc_s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        acc_p = _mm256_fmadd_pd(vx, vy, acc_p);
        acc_s = _mm256_fmadd_pd(swap_lanes(vx), vy, acc_s);
    }
    double sr = reduce_all(acc_p);               // xr*yr + xi*yi
    double si = -reduce_even_minus_odd(acc_s);   // xr*yi - xi*yr
    for (; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        const double yr = yd[2 * i], yi = yd[2 * i + 1];
        sr += xr * yr + xi * yi;
        si += xr * yi - xi * yr;
    }
    return {sr, si};
}

double znrm2sq_avx2(std::size_t n, const cplx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= 2 * n; i += 4) {
        const __m256d v = _mm256_loadu_pd(xd + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = reduce_all(acc);
    for (; i < 2 * n; ++i) s += xd[i] * xd[i];
    return s;
}

void zgemm_nn_avx2(std::size_t m, std::size_t n, std::size_t k, cplx alpha,
                   const cplx* a, std::size_t lda, const cplx* b,
                   std::size_t ldb, cplx* c, std::size_t ldc) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * ldc;
        double* cd = reinterpret_cast<double*>(crow);
        std::size_t l = 0;
        // Two B rows per pass so each C element sees two fused updates
        // per load/store round trip.
        for (; l + 2 <= k; l += 2) {
            const cplx f0 = alpha * a[i * lda + l];
            const cplx f1 = alpha * a[i * lda + l + 1];
            const bool z0 = f0.real() == 0.0 && f0.imag() == 0.0;
            const bool z1 = f1.real() == 0.0 && f1.imag() == 0.0;
            if (z0 && z1) continue;
            if (z1) { zaxpy_avx2(n, f0, b + l * ldb, crow); continue; }
            if (z0) { zaxpy_avx2(n, f1, b + (l + 1) * ldb, crow); continue; }
            const __m256d va0 = _mm256_set1_pd(f0.real());
            const __m256d vb0 = _mm256_set1_pd(f0.imag());
            const __m256d va1 = _mm256_set1_pd(f1.real());
            const __m256d vb1 = _mm256_set1_pd(f1.imag());
            const double* b0 = reinterpret_cast<const double*>(b + l * ldb);
            const double* b1 =
                reinterpret_cast<const double*>(b + (l + 1) * ldb);
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2) {
                const __m256d vx0 = _mm256_loadu_pd(b0 + 2 * j);
                const __m256d vx1 = _mm256_loadu_pd(b1 + 2 * j);
                __m256d vy = _mm256_loadu_pd(cd + 2 * j);
                vy = _mm256_add_pd(
                    vy, _mm256_fmaddsub_pd(
                            va0, vx0, _mm256_mul_pd(vb0, swap_lanes(vx0))));
                vy = _mm256_add_pd(
                    vy, _mm256_fmaddsub_pd(
                            va1, vx1, _mm256_mul_pd(vb1, swap_lanes(vx1))));
                _mm256_storeu_pd(cd + 2 * j, vy);
            }
            for (; j < n; ++j) {
                crow[j] += f0 * b[l * ldb + j] + f1 * b[(l + 1) * ldb + j];
            }
        }
        if (l < k) {
            const cplx f = alpha * a[i * lda + l];
            if (f.real() != 0.0 || f.imag() != 0.0)
                zaxpy_avx2(n, f, b + l * ldb, crow);
        }
    }
}

void csr_spmv_avx2(std::size_t rows, const std::size_t* row_ptr,
                   const std::int32_t* col_idx, const cplx* vals,
                   const cplx* x, cplx* y) {
    const double* vd = reinterpret_cast<const double*>(vals);
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t p0 = row_ptr[r], p1 = row_ptr[r + 1];
        __m256d acc_p = _mm256_setzero_pd();
        __m256d acc_s = _mm256_setzero_pd();
        std::size_t p = p0;
        for (; p + 2 <= p1; p += 2) {
            const __m256d vv = _mm256_loadu_pd(vd + 2 * p);
            const __m128d x0 = _mm_loadu_pd(xd + 2 * col_idx[p]);
            const __m128d x1 = _mm_loadu_pd(xd + 2 * col_idx[p + 1]);
            const __m256d vx =
                _mm256_insertf128_pd(_mm256_castpd128_pd256(x0), x1, 1);
            acc_p = _mm256_fmadd_pd(vv, vx, acc_p);
            acc_s = _mm256_fmadd_pd(swap_lanes(vv), vx, acc_s);
        }
        double sr = reduce_even_minus_odd(acc_p);
        double si = reduce_all(acc_s);
        for (; p < p1; ++p) {
            const std::size_t j = static_cast<std::size_t>(col_idx[p]);
            const double vr = vd[2 * p], vi = vd[2 * p + 1];
            const double xr = xd[2 * j], xi = xd[2 * j + 1];
            sr += vr * xr - vi * xi;
            si += vr * xi + vi * xr;
        }
        y[r] = {sr, si};
    }
}

}  // namespace

const Backend* avx2_backend() {
    static const Backend b{"avx2",        zaxpy_avx2,   zscal_avx2,
                           zdotu_avx2,    zdotc_avx2,   znrm2sq_avx2,
                           zgemm_nn_avx2, csr_spmv_avx2};
    return &b;
}

}  // namespace ohe::kern
