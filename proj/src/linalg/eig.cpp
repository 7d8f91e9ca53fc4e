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

#include "ohe/linalg/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ohe::la {

namespace {

// One complex Jacobi rotation zeroing a(p,q). The 2x2 Hermitian block
// [[app, z], [conj(z), aqq]] is diagonalized by U = [[c, s], [-conj(s), c]]
// with c real and s = t*c*exp(i*arg(z)), t the smaller root of
// t^2 + 2*tau*t - 1 = 0, tau = (aqq - app) / (2|z|).
void rotate(CMat& a, CMat& v, std::size_t p, std::size_t q) {
    const cplx z = a(p, q);
    const double az = std::abs(z);
    if (az == 0.0) return;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * az);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cplx phase = z / az;
    const cplx s = t * c * phase;
    const std::size_t n = a.rows();

    // columns: A <- A U
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - std::conj(s) * akq;
        a(k, q) = s * akp + c * akq;
    }
    // rows: A <- U^dagger A
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = std::conj(s) * apk + c * aqk;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - std::conj(s) * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
}

double offdiag_norm(const CMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

}  // namespace

EigH eig_hermitian(const CMat& input, double herm_tol) {
    if (input.rows() != input.cols())
        throw std::invalid_argument("eig_hermitian: matrix not square");
    if (herm_defect(input) > herm_tol * std::max(1.0, max_abs(input)))
        throw std::invalid_argument("eig_hermitian: matrix not Hermitian");

    const std::size_t n = input.rows();
    CMat a = input;
    // Symmetrize away roundoff so the rotations see exact Hermitian data.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx{a(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    CMat v = CMat::identity(n);
    const double scale = std::max(1.0, fro_norm(a));
    for (int sweep = 0; sweep < 64; ++sweep) {
        if (offdiag_norm(a) <= 1e-14 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 1e-300) rotate(a, v, p, q);
    }

    EigH out;
    out.vals.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < n; ++i) out.vals[i] = a(i, i).real();
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) {
                  return out.vals[x] < out.vals[y];
              });
    std::sort(out.vals.begin(), out.vals.end());
    out.vecs = CMat(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) out.vecs(i, j) = v(i, order[j]);
    return out;
}

namespace {

// In-place Cholesky probe: true iff m is positive definite. m is destroyed.
bool cholesky_ok(CMat& m) {
    const std::size_t n = m.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(m(j, k));
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double lj = std::sqrt(d);
        m(j, j) = lj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = m(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= m(i, k) * std::conj(m(j, k));
            m(i, j) = s / lj;
        }
    }
    return true;
}

}  // namespace

double min_eig_hermitian(const CMat& a, double abs_tol) {
    const std::size_t n = a.rows();
    // Gershgorin bounds for the bisection bracket.
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) r += std::abs(a(i, j));
        lo = std::min(lo, a(i, i).real() - r);
        hi = std::max(hi, a(i, i).real() + r);
    }
    auto pd_shifted = [&](double s) {
        CMat m = a;
        for (std::size_t i = 0; i < n; ++i) m(i, i) -= s;
        return cholesky_ok(m);
    };
    if (!pd_shifted(lo)) return lo;  // degenerate bracket; report the bound
    while (hi - lo > abs_tol) {
        const double mid = 0.5 * (lo + hi);
        if (pd_shifted(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace ohe::la
