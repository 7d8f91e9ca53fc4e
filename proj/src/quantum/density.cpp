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

#include "ohe/quantum/density.hpp"

#include <cmath>

#include "ohe/linalg/eig.hpp"

namespace ohe::quantum {

DensityMatrix::Audit DensityMatrix::audit() const {
    Audit a;
    a.trace_error = std::abs(la::trace(rho) - cplx{1.0, 0.0});
    a.herm_defect = la::herm_defect(rho);
    a.min_eig = la::min_eig_hermitian(rho);
    return a;
}

void DensityMatrix::hermitize_and_normalize() {
    const std::size_t n = rho.rows();
    for (std::size_t i = 0; i < n; ++i) {
        rho(i, i) = cplx{rho(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = m;
            rho(j, i) = std::conj(m);
        }
    }
    const double tr = la::trace(rho).real();
    if (tr == 0.0) throw NumericalError("density matrix has zero trace");
    rho *= cplx{1.0 / tr, 0.0};
}

DensityMatrix maximally_mixed(const HilbertDims& dims) {
    DensityMatrix d;
    d.dims = dims;
    const std::size_t n = dims.joint();
    d.rho = CMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        d.rho(i, i) = 1.0 / static_cast<double>(n);
    return d;
}

CMat thermal_state(std::size_t levels, double nbar) {
    CMat rho(levels, levels);
    if (nbar <= 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    const double q = nbar / (nbar + 1.0);
    double w = 1.0, norm = 0.0;
    for (std::size_t n = 0; n < levels; ++n, w *= q) {
        rho(n, n) = w;
        norm += w;
    }
    for (std::size_t n = 0; n < levels; ++n) rho(n, n) /= norm;
    return rho;
}

CMat fock_state(std::size_t levels, std::size_t n) {
    if (n >= levels) throw DimensionError("fock_state: level out of range");
    CMat rho(levels, levels);
    rho(n, n) = 1.0;
    return rho;
}

CMat coherent_state(std::size_t levels, cplx alpha) {
    // truncated and renormalized so the returned state has unit trace
    std::vector<cplx> c(levels);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    double norm2 = std::norm(c[0]);
    for (std::size_t n = 1; n < levels; ++n) {
        c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
        norm2 += std::norm(c[n]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    CMat rho(levels, levels);
    for (std::size_t i = 0; i < levels; ++i)
        for (std::size_t j = 0; j < levels; ++j)
            rho(i, j) = (inv * c[i]) * std::conj(inv * c[j]);
    return rho;
}

CMat reduced_cavity(const DensityMatrix& d) {
    const std::size_t nc = d.dims.n_cav, nm = d.dims.n_mol;
    if (nc * nm != d.dim())
        throw DimensionError("reduced_cavity: dims mismatch");
    CMat out(nc, nc);
    for (std::size_t n = 0; n < nc; ++n)
        for (std::size_t m = 0; m < nc; ++m) {
            cplx s{0.0, 0.0};
            for (std::size_t i = 0; i < nm; ++i)
                s += d.rho(n * nm + i, m * nm + i);
            out(n, m) = s;
        }
    return out;
}

CMat reduced_molecule(const DensityMatrix& d) {
    const std::size_t nc = d.dims.n_cav, nm = d.dims.n_mol;
    if (nc * nm != d.dim())
        throw DimensionError("reduced_molecule: dims mismatch");
    CMat out(nm, nm);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t n = 0; n < nc; ++n)
                s += d.rho(n * nm + i, n * nm + j);
            out(i, j) = s;
        }
    return out;
}

double g2(const CMat& rho_cav) {
    const std::size_t n = rho_cav.rows();
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double pk = rho_cav(k, k).real();
        n1 += kk * pk;
        n2 += kk * (kk - 1.0) * pk;
    }
    if (n1 <= 1e-12)
        throw NumericalError("g2: correlation undefined on (near-)vacuum");
    return n2 / (n1 * n1);
}

double purity(const CMat& rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    double s = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) s += std::norm(rho.data()[i]);
    return s;
}

double trace_distance(const CMat& a, const CMat& b) {
    CMat d = a;
    d -= b;
    const la::EigH e = la::eig_hermitian(d, 1e-8);
    double s = 0.0;
    for (const double v : e.vals) s += std::abs(v);
    return 0.5 * s;
}

double fidelity(const CMat& rho, const CMat& sigma) {
    const la::EigH er = la::eig_hermitian(rho, 1e-8);
    const std::size_t n = rho.rows();
    CMat sq = er.vecs;
    for (std::size_t j = 0; j < n; ++j) {
        const double s = std::sqrt(std::max(0.0, er.vals[j]));
        for (std::size_t i = 0; i < n; ++i) sq(i, j) *= s;
    }
    const CMat sqrt_rho = la::matmul(sq, la::adjoint(er.vecs));
    const CMat m = la::matmul(la::matmul(sqrt_rho, sigma), sqrt_rho);
    const la::EigH em = la::eig_hermitian(m, 1e-8);
    double t = 0.0;
    for (const double v : em.vals) t += std::sqrt(std::max(0.0, v));
    return t * t;
}

}  // namespace ohe::quantum
