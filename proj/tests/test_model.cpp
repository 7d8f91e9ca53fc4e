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

#include <cmath>
#include <random>

#include "ohe/linalg/eig.hpp"
#include "ohe/model/liouvillian.hpp"
#include "ohe/quantum/density.hpp"

using namespace ohe;
using model::EngineParams;
using la::CMat;
using la::cplx;

namespace {

EngineParams fig1_params() {
    EngineParams p;  // defaults carry the reference set already
    p.beta = 2.0;
    return p;
}

std::mt19937_64 rng(1313u);

CMat random_hermitian(std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    CMat a(n, n);
    for (std::size_t i = 0; i < n; ++i) a.data()[i * n + i] = {d(rng), 0.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = {d(rng), d(rng)};
            a(j, i) = std::conj(a(i, j));
        }
    return a;
}

// Smallest eigenvalue of the real symmetric tridiagonal (diag, off) by
// Sturm bisection: count of pivots < 0 in the shifted LDL recursion.
double tridiag_smallest(const std::vector<double>& diag,
                        const std::vector<double>& off) {
    const std::size_t n = diag.size();
    auto count_below = [&](double s) {
        std::size_t cnt = 0;
        double d = diag[0] - s;
        if (d < 0.0) ++cnt;
        for (std::size_t i = 1; i < n; ++i) {
            const double denom = d == 0.0 ? 1e-300 : d;
            d = diag[i] - s - off[i - 1] * off[i - 1] / denom;
            if (d < 0.0) ++cnt;
        }
        return cnt;
    };
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// finite-difference grid ground-state energy of p^2/2m + V on [-L, L]
double grid_ground_energy(const EngineParams& p, double extent,
                          std::size_t points) {
    const double h = 2.0 * extent / static_cast<double>(points - 1);
    const double kin = p.hbar * p.hbar / (2.0 * p.mass * h * h);
    std::vector<double> diag(points), off(points - 1, -kin);
    for (std::size_t i = 0; i < points; ++i) {
        const double x = -extent + h * static_cast<double>(i);
        diag[i] = 2.0 * kin + model::potential(x, p);
    }
    return tridiag_smallest(diag, off);
}

}  // namespace

TEST_CASE("potential values and symmetry") {
    const EngineParams p = fig1_params();
    CHECK(model::potential(0.0, p) == doctest::Approx(2.0).epsilon(1e-15));

    EngineParams sym = p;
    sym.theta = 0.0;
    for (double x : {0.3, 1.1, 2.7})
        CHECK(model::potential(x, sym) ==
              doctest::Approx(model::potential(-x, sym)).epsilon(1e-15));
}

TEST_CASE("potential minima count by dense scan") {
    EngineParams p = fig1_params();
    p.beta = 2.0;
    p.theta = 1.0;
    p.barrier_width = 1.0;
    std::size_t minima = 0;
    double prev = model::potential(-6.0, p);
    double cur = model::potential(-6.0 + 1e-3, p);
    for (double x = -6.0 + 2e-3; x <= 6.0; x += 1e-3) {
        const double next = model::potential(x, p);
        if (cur < prev && cur <= next) ++minima;
        prev = cur;
        cur = next;
    }
    CHECK(minima == 2);
}

TEST_CASE("potential derivatives: closed forms and finite differences") {
    const EngineParams p = fig1_params();
    CHECK(model::potential_derivs(0.0, p).first ==
          doctest::Approx(p.theta).epsilon(1e-15));
    CHECK(model::potential_derivs(0.0, p).second ==
          doctest::Approx(p.mass * p.omega_m * p.omega_m -
                          2.0 * p.beta /
                              (p.barrier_width * p.barrier_width)));

    // h = 1e-5 for V'; the second difference needs a larger step before
    // roundoff (eps/h^2) eats the 1e-6 budget
    const double h1 = 1e-5, h2 = 1e-4;
    for (double x = -5.0; x <= 5.0; x += 0.37) {
        const auto d = model::potential_derivs(x, p);
        const double fd1 = (model::potential(x + h1, p) -
                            model::potential(x - h1, p)) /
                           (2.0 * h1);
        const double fd2 = (model::potential(x + h2, p) -
                            2.0 * model::potential(x, p) +
                            model::potential(x - h2, p)) /
                           (h2 * h2);
        CHECK(std::abs(d.first - fd1) <=
              1e-6 * std::max(1.0, std::abs(d.first)));
        CHECK(std::abs(d.second - fd2) <=
              1e-6 * std::max(1.0, std::abs(d.second)));
    }
}

TEST_CASE("logistic rates and effective occupation") {
    EngineParams p = fig1_params();
    const auto r0 = model::rates(0.0, p);
    CHECK(r0.hot == doctest::Approx(p.kappa0 / 2.0));
    CHECK(r0.cold == doctest::Approx(p.kappa0 / 2.0));

    for (double x = -30.0; x <= 30.0; x += 0.7) {
        const auto r = model::rates(x, p);
        CHECK(r.hot + r.cold == doctest::Approx(p.kappa0).epsilon(1e-14));
    }

    p.g_kappa = 4.0;
    CHECK(model::rates(1.0, p).hot ==
          doctest::Approx(0.05 / (1.0 + std::exp(4.0))).epsilon(1e-14));

    CHECK(model::n_eff(0.0, p) == doctest::Approx(2.0));
    CHECK(model::n_eff(80.0, p) == doctest::Approx(p.n_cold).epsilon(1e-12));
    CHECK(model::n_eff(-80.0, p) == doctest::Approx(p.n_hot).epsilon(1e-12));
}

TEST_CASE("decoupled hamiltonian has the harmonic spectrum") {
    EngineParams p = fig1_params();
    p.g_omega = 0.0;
    p.beta = 0.0;
    p.theta = 0.0;
    const hilbert::HilbertDims dims{4, 8};
    const auto h = model::build_hamiltonian(p, dims);
    const la::EigH e = la::eig_hermitian(h.dense());
    for (std::size_t n = 0; n < 4; ++n)
        for (std::size_t k = 0; k + 3 < 8; ++k) {
            const double expect = p.omega_a * static_cast<double>(n) +
                                  (static_cast<double>(k) + 0.5);
            double best = 1e300;
            for (const double v : e.vals)
                best = std::min(best, std::abs(v - expect));
            CHECK(best < 1e-8);
        }
}

TEST_CASE("cavity term vanishes in the vacuum") {
    const EngineParams p = fig1_params();
    const hilbert::HilbertDims dims{3, 6};
    const auto heff = model::build_h_a_eff(p, dims);
    // |0>_cav (x) molecular ground of the harmonic part
    la::cvec ground(dims.joint(), cplx{0.0, 0.0});
    ground[0] = 1.0;
    const la::cvec hv = la::spmv(heff.mat, ground);
    for (std::size_t i = 0; i < dims.n_mol; ++i) CHECK(std::abs(hv[i]) == 0.0);
}

TEST_CASE("molecular ground energy matches grid diagonalization") {
    const EngineParams p = fig1_params();
    const auto mol = model::build_molecular_ops(p, 60);
    const la::EigH e = la::eig_hermitian(mol.h_mol);
    // Richardson-extrapolated second-order finite differences
    const double e1 = grid_ground_energy(p, 10.0, 3000);
    const double e2 = grid_ground_energy(p, 10.0, 6000);
    const double grid = (4.0 * e2 - e1) / 3.0;
    CHECK(std::abs(e.vals.front() - grid) < 1e-6);
}

TEST_CASE("rate-operator sum rule") {
    const EngineParams p = fig1_params();
    const auto mol = model::build_molecular_ops(p, 30);
    CMat sum = la::matmul(mol.k_hot, mol.k_hot);
    sum += la::matmul(mol.k_cold, mol.k_cold);
    sum -= cplx{p.kappa0, 0.0} * CMat::identity(30);
    CHECK(la::max_abs(sum) < 1e-10);
}

TEST_CASE("liouvillian annihilates trace and preserves hermiticity") {
    EngineParams p = fig1_params();
    p.beta = 1.0;
    const hilbert::HilbertDims dims{4, 6};
    const auto parts = model::build_liouvillian(p, dims);
    const std::size_t d = dims.joint();
    double worst_tr = 0.0, worst_h = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const CMat rho = random_hermitian(d);
        const la::cvec out = parts.full.apply(hilbert::vectorize(rho));
        const CMat m = hilbert::devectorize(out);
        worst_tr = std::max(worst_tr,
                            std::abs(la::trace(m)) / la::fro_norm(rho));
        worst_h = std::max(worst_h, la::herm_defect(m));
    }
    CHECK(worst_tr < 1e-10 * la::csr_max_abs(parts.full.mat) * d);
    CHECK(worst_h < 1e-10 * la::csr_max_abs(parts.full.mat));
}

TEST_CASE("zero dissipative coupling reduces the jump operators") {
    EngineParams p = fig1_params();
    p.g_kappa = 0.0;
    const hilbert::HilbertDims dims{4, 5};
    const auto parts = model::build_liouvillian(p, dims);

    // reference: sqrt(kappa0/2) a on the joint space
    hilbert::Operator a = hilbert::ladder(dims.n_cav);
    a.mat = la::csr_scale(a.mat, cplx{std::sqrt(p.kappa0 / 2.0), 0.0});
    const auto l_down = hilbert::tensor(a, hilbert::identity_op(dims.n_mol));
    hilbert::Operator adag;
    adag.mat = la::csr_adjoint(l_down.mat);
    la::CSR ref = la::csr_scale(hilbert::dissipator(l_down).mat,
                                cplx{p.n_hot + 1.0, 0.0});
    ref = la::csr_add(ref, hilbert::dissipator(adag).mat,
                      cplx{p.n_hot, 0.0});
    CMat diff = la::csr_to_dense(parts.hot.mat);
    diff -= la::csr_to_dense(ref);
    CHECK(la::max_abs(diff) < 1e-12);
}

TEST_CASE("brownian term is stationary on its own thermal gaussian") {
    // For the literal equation-of-motion coefficients the stationary Gaussian
    // of the Brownian term sits at occupation 2 n_th + 1/2 (second moments
    // <p^2> = hbar (n_th + 1/2), <x^2> = <p^2>/(m omega)^2), not at n_th.
    EngineParams p = fig1_params();
    p.beta = 0.0;
    p.theta = 0.0;
    p.g_omega = 0.0;
    p.g_kappa = 0.0;
    p.n_th = 0.0;
    const hilbert::HilbertDims dims{2, 36};
    const auto parts = model::build_liouvillian(p, dims);

    CMat rho_mol = quantum::thermal_state(dims.n_mol, 2.0 * p.n_th + 0.5);
    CMat rho(dims.joint(), dims.joint());
    for (std::size_t i = 0; i < dims.n_mol; ++i)
        for (std::size_t j = 0; j < dims.n_mol; ++j)
            rho(i, j) = rho_mol(i, j);  // |0><0|_cav (x) thermal
    la::cvec v = hilbert::vectorize(rho);
    la::cvec out = parts.brownian.apply(v);
    const la::cvec ham = parts.ham.apply(v);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += ham[i];
    CHECK(la::nrm2(out) < 1e-8);
}

TEST_CASE("decoupled thermal product state is a fixed point") {
    EngineParams p = fig1_params();
    p.beta = 0.0;
    p.theta = 0.0;
    p.g_omega = 0.0;
    p.g_kappa = 0.0;
    p.n_th = 0.0;
    const hilbert::HilbertDims dims{16, 24};
    const auto parts = model::build_liouvillian(p, dims);
    const CMat cav =
        quantum::thermal_state(dims.n_cav, 0.5 * (p.n_hot + p.n_cold));
    const CMat mol = quantum::thermal_state(dims.n_mol, 2.0 * p.n_th + 0.5);
    CMat rho(dims.joint(), dims.joint());
    for (std::size_t n = 0; n < dims.n_cav; ++n)
        for (std::size_t m = 0; m < dims.n_cav; ++m)
            for (std::size_t i = 0; i < dims.n_mol; ++i)
                for (std::size_t j = 0; j < dims.n_mol; ++j)
                    rho(n * dims.n_mol + i, m * dims.n_mol + j) =
                        cav(n, m) * mol(i, j);
    const la::cvec out = parts.full.apply(hilbert::vectorize(rho));
    CHECK(la::nrm2(out) < 1e-7);
}
