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

#include "ohe/hilbert/hilbert.hpp"

using namespace ohe;
using namespace ohe::hilbert;

namespace {

std::mt19937_64 rng(4242u);

CMat random_mat(std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    CMat a(n, n);
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = {d(rng), d(rng)};
    return a;
}

CMat random_hermitian(std::size_t n) {
    CMat a = random_mat(n);
    CMat h = la::adjoint(a);
    h += a;
    h *= cplx{0.5, 0.0};
    return h;
}

// Naive triple-loop product, independent of the kernel/gemm path.
CMat naive_mul(const CMat& a, const CMat& b) {
    CMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
    return c;
}

}  // namespace

TEST_CASE("ladder operator entries and edge cases") {
    const Operator a2 = ladder(2);
    CHECK(a2.mat.nnz() == 1);
    CHECK(a2.dense()(0, 1) == cplx{1.0, 0.0});

    // a |0> = 0
    const Operator a5 = ladder(5);
    cvec vac(5, cplx{0.0, 0.0});
    vac[0] = 1.0;
    const cvec av = la::spmv(a5.mat, vac);
    for (const auto& z : av) CHECK(std::abs(z) == 0.0);

    // a^dag a = diag(0, 1, 2, 3)
    const Operator a4 = ladder(4);
    const CMat num = naive_mul(la::adjoint(a4.dense()), a4.dense());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(num(i, j) -
                           (i == j ? cplx{static_cast<double>(i), 0.0}
                                   : cplx{0.0, 0.0})) < 1e-15);

    CHECK_THROWS_AS((void)ladder(1), DimensionError);
}

TEST_CASE("tensor product structure") {
    const Operator id6 = tensor(identity_op(2), identity_op(3));
    CMat diff = id6.dense();
    diff -= CMat::identity(6);
    CHECK(la::max_abs(diff) == 0.0);
    CHECK(id6.dims == HilbertDims{2, 3});

    // mixed-product identity (A (x) I)(I (x) B) = A (x) B
    const Operator a = from_dense(random_mat(3));
    const Operator b = from_dense(random_mat(4));
    const la::CSR prod = la::csr_matmul(tensor(a, identity_op(4)).mat,
                                        tensor(identity_op(3), b).mat);
    CMat d2 = la::csr_to_dense(prod);
    d2 -= tensor(a, b).dense();
    CHECK(la::max_abs(d2) < 1e-14);

    // counted by hand from the Kronecker structure
    CHECK(tensor(ladder(2), identity_op(2)).mat.nnz() == 2);
}

TEST_CASE("operator_function identity and constant") {
    Operator o = from_dense(random_hermitian(9));
    o.mark_hermitian();
    const Operator same = operator_function(o, [](double x) { return x; });
    CMat diff = same.dense();
    diff -= o.dense();
    CHECK(la::max_abs(diff) < 1e-12);

    const Operator c = operator_function(o, [](double) { return 2.5; });
    CMat cd = c.dense();
    cd -= cplx{2.5, 0.0} * CMat::identity(9);
    CHECK(la::max_abs(cd) < 1e-12);

    CMat bad = random_mat(5);
    bad(0, 1) = {3.0, 1.0};
    bad(1, 0) = {0.0, 0.0};
    CHECK_THROWS_AS(
        (void)operator_function(from_dense(bad), [](double x) { return x; }),
        NumericalError);
}

namespace {

std::vector<double> oracle_psi(std::size_t n, double xx) {
    // psi_k(x) = 2^{-1/4} h_k(x / sqrt(2)) with orthonormal h_k
    std::vector<double> psi(n);
    const double xi = xx / std::sqrt(2.0);
    double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * xi * xi);
    psi[0] = std::pow(2.0, -0.25) * h0;
    double h1 = std::sqrt(2.0) * xi * h0;
    psi[1] = std::pow(2.0, -0.25) * h1;
    for (std::size_t k = 2; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double h2 =
            xi * std::sqrt(2.0 / kk) * h1 - std::sqrt((kk - 1.0) / kk) * h0;
        psi[k] = std::pow(2.0, -0.25) * h2;
        h0 = h1;
        h1 = h2;
    }
    return psi;
}

// trapezoid quadrature of psi_m exp(-x^2) psi_n over a wide interval;
// spectrally accurate for these decaying analytic integrands
CMat quad_gaussian_block(std::size_t n, std::size_t block) {
    const double lo = -26.0, hi = 26.0;
    const std::size_t steps = 26001;
    const double h = (hi - lo) / static_cast<double>(steps - 1);
    CMat quad(block, block);
    for (std::size_t s = 0; s < steps; ++s) {
        const double xx = lo + h * static_cast<double>(s);
        const double w = (s == 0 || s + 1 == steps) ? 0.5 * h : h;
        const std::vector<double> psi = oracle_psi(n, xx);
        const double f = std::exp(-xx * xx);
        for (std::size_t i = 0; i < block; ++i)
            for (std::size_t j = 0; j < block; ++j)
                quad(i, j) += w * psi[i] * f * psi[j];
    }
    return quad;
}

CMat gaussian_of_x(std::size_t n) {
    const Operator b = ladder(n);
    CMat x = b.dense();
    x += la::adjoint(b.dense());
    Operator xop = from_dense(x);
    xop.mark_hermitian();
    return operator_function(xop, [](double v) { return std::exp(-v * v); })
        .dense();
}

double block_mismatch(const CMat& a, const CMat& b, std::size_t block) {
    double worst = 0.0;
    for (std::size_t i = 0; i < block; ++i)
        for (std::size_t j = 0; j < block; ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("operator_function gaussian matches position-grid quadrature") {
    // The spectral calculus of a truncated x is an n-node Gauss-type
    // quadrature of the position integral, so the match to the true
    // integral holds only well inside the truncation: at 40 levels the
    // lowest block agrees to 1e-8, and by 80 levels a 16x16 block does.
    const CMat g40 = gaussian_of_x(40);
    const CMat q40 = quad_gaussian_block(40, 4);
    CHECK(block_mismatch(g40, q40, 4) < 1e-8);

    const CMat g80 = gaussian_of_x(80);
    const CMat q80 = quad_gaussian_block(80, 16);
    CHECK(block_mismatch(g80, q80, 16) < 1e-8);
}

TEST_CASE("spectral calculus composes") {
    Operator o = from_dense(random_hermitian(12));
    o.mark_hermitian();
    auto gfun = [](double v) { return 0.5 * v; };
    auto ffun = [](double v) { return std::sin(v); };
    const Operator viacomp =
        operator_function(o, [&](double v) { return ffun(gfun(v)); });
    const Operator stepwise =
        operator_function(operator_function(o, gfun), ffun);
    CMat diff = viacomp.dense();
    diff -= stepwise.dense();
    CHECK(la::max_abs(diff) < 1e-10);
    CHECK(la::herm_defect(stepwise.dense()) < 1e-13);
}

TEST_CASE("dissipator closed forms and dense oracle") {
    Operator zero;
    zero.mat = la::csr_from_dense(CMat(4, 4));
    CHECK(dissipator(zero).mat.nnz() == 0);

    // single-photon decay: D[a] |1><1| = |0><0| - |1><1| on 3 levels
    const Operator a3 = ladder(3);
    CMat rho(3, 3);
    rho(1, 1) = 1.0;
    const CMat m = devectorize(dissipator(a3).apply(vectorize(rho)));
    CMat expect(3, 3);
    expect(0, 0) = 1.0;
    expect(1, 1) = -1.0;
    CMat diff = m;
    diff -= expect;
    CHECK(la::max_abs(diff) < 1e-14);

    // random L against the direct dense evaluation
    const CMat l = random_mat(6);
    const CMat r = random_hermitian(6);
    const CMat ldag = la::adjoint(l);
    const CMat ldl = naive_mul(ldag, l);
    CMat direct = naive_mul(naive_mul(l, r), ldag);
    CMat anti = naive_mul(ldl, r);
    anti += naive_mul(r, ldl);
    anti *= cplx{0.5, 0.0};
    direct -= anti;

    CMat d2 = devectorize(dissipator(from_dense(l)).apply(vectorize(r)));
    d2 -= direct;
    CHECK(la::max_abs(d2) < 1e-12);
}

TEST_CASE("vectorization convention and round trip") {
    CMat half = CMat::identity(2);
    half *= cplx{0.5, 0.0};
    const cvec v = vectorize(half);
    CHECK(v[0] == cplx{0.5, 0.0});
    CHECK(v[1] == cplx{0.0, 0.0});
    CHECK(v[2] == cplx{0.0, 0.0});
    CHECK(v[3] == cplx{0.5, 0.0});

    const CMat r = random_mat(7);
    const CMat back = devectorize(vectorize(r));
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(back.data()[i] == r.data()[i]);

    cvec bad(5);
    CHECK_THROWS_AS((void)devectorize(bad), DimensionError);

    // (B^T (x) A) vec(rho) = vec(A rho B)
    const CMat a = random_mat(5), b = random_mat(5), rho = random_mat(5);
    const la::CSR super = la::csr_kron(
        la::csr_from_dense(la::transpose(b)), la::csr_from_dense(a));
    const CMat lhs = devectorize(la::spmv(super, vectorize(rho)));
    CMat d3 = lhs;
    d3 -= naive_mul(naive_mul(a, rho), b);
    CHECK(la::max_abs(d3) < 1e-12);
}

TEST_CASE("dissipator-built generators annihilate the trace") {
    for (int trial = 0; trial < 20; ++trial) {
        const CMat l = random_mat(8);
        const SuperOperator d = dissipator(from_dense(l));
        const CMat rho = random_hermitian(8);
        const double tr = trace_of_applied(d, rho);
        CHECK(tr <= 1e-10 * la::fro_norm(rho) *
                        std::max(1.0, la::fro_norm(l) * la::fro_norm(l)) * 8);
    }
}
