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

#include "ohe/quantum/observables.hpp"

using namespace ohe;
using namespace ohe::quantum;
using la::CMat;
using la::cplx;

namespace {

model::EngineParams engine_point() {
    model::EngineParams p;
    p.beta = 1.0;
    p.g_kappa = 4.0;
    return p;
}

model::EngineParams decoupled_point() {
    model::EngineParams p;
    p.g_omega = 0.0;
    p.g_kappa = 0.0;
    p.beta = 0.0;
    p.theta = 0.0;
    p.n_th = 0.0;
    return p;
}

CMat product_state(const CMat& cav, const CMat& mol) {
    const std::size_t nc = cav.rows(), nm = mol.rows();
    CMat rho(nc * nm, nc * nm);
    for (std::size_t n = 0; n < nc; ++n)
        for (std::size_t m = 0; m < nc; ++m)
            for (std::size_t i = 0; i < nm; ++i)
                for (std::size_t j = 0; j < nm; ++j)
                    rho(n * nm + i, m * nm + j) = cav(n, m) * mol(i, j);
    return rho;
}

}  // namespace

TEST_CASE("steady state: trace, hermiticity, residual") {
    const auto parts = model::build_liouvillian(engine_point(), {5, 8});
    const auto ss = steady_state(parts.full);
    const auto audit = ss.rho.audit();
    CHECK(audit.trace_error <= 1e-10);
    CHECK(audit.herm_defect <= 1e-10);
    CHECK(ss.residual_raw <= 1e-8 * static_cast<double>(ss.rho.dim()));
    CHECK(ss.min_eig >= -1e-6);
    CHECK(ss.method == "sparse-direct");
}

TEST_CASE("steady state of the decoupled engine is a thermal product") {
    const auto p = decoupled_point();
    const hilbert::HilbertDims dims{24, 8};
    const auto parts = model::build_liouvillian(p, dims);
    const auto ss = steady_state(parts.full);
    // molecular factor: stationary Gaussian of the Brownian term, which
    // sits at occupation 2 n_th + 1/2 in these units
    const CMat expect = product_state(
        thermal_state(dims.n_cav, 0.5 * (p.n_hot + p.n_cold)),
        thermal_state(dims.n_mol, 2.0 * p.n_th + 0.5));
    CHECK(fidelity(ss.rho.rho, expect) >= 1.0 - 1e-6);
}

TEST_CASE("ladder solver agrees with the sparse-direct path") {
    for (const auto& [g, beta] :
         {std::pair{4.0, 1.0}, std::pair{8.0, 0.6}, std::pair{1.0, 2.2}}) {
        model::EngineParams p = engine_point();
        p.g_kappa = g;
        p.beta = beta;
        const hilbert::HilbertDims dims{5, 8};
        const auto parts = model::build_liouvillian(p, dims);
        const auto direct = steady_state(parts.full);
        const auto sys = make_engine_system(p, dims);
        const auto ladder = steady_state_ladder(sys);
        CHECK(trace_distance(direct.rho.rho, ladder.rho.rho) < 1e-8);
        CHECK(ladder.residual_raw < 1e-9);
    }
}

TEST_CASE("degenerate null space raises a multiplicity error") {
    // D[a (x) I] leaves every molecular state invariant: the null space
    // is |0><0| (x) (anything), multiplicity n_mol^2.
    const auto a = hilbert::ladder(3);
    const auto l = hilbert::tensor(a, hilbert::identity_op(3));
    hilbert::SuperOperator gen = hilbert::dissipator(l);
    gen.dims = {3, 3};
    CHECK_THROWS_AS((void)steady_state(gen), NumericalError);
}

TEST_CASE("evolve: identity at t = 0 and unitary purity conservation") {
    const auto p = engine_point();
    const hilbert::HilbertDims dims{4, 6};
    const auto parts = model::build_liouvillian(p, dims);

    DensityMatrix rho0;
    rho0.dims = dims;
    rho0.rho = product_state(coherent_state(dims.n_cav, {0.6, 0.2}),
                             thermal_state(dims.n_mol, 0.3));
    const auto same = evolve(rho0, parts.full, 0.0);
    CHECK(la::max_abs(same.rho) == la::max_abs(rho0.rho));

    // Hamiltonian part alone is unitary: purity must be conserved.
    // The cavity coherences rotate at omega_a, so hitting 1e-8 on the
    // conserved quantity needs tolerances beyond the sweep defaults.
    const double pur0 = purity(rho0.rho);
    const auto rot = evolve(rho0, parts.ham, 3.0, 1e-10, 1e-12);
    CHECK(std::abs(purity(rot.rho) - pur0) < 1e-8);
    CHECK(std::abs(la::trace(rot.rho) - cplx{1.0, 0.0}) < 1e-8);
}

TEST_CASE("evolve: analytic cavity decay") {
    model::EngineParams p = decoupled_point();
    p.n_hot = 0.0;
    p.n_cold = 0.0;
    const hilbert::HilbertDims dims{3, 4};
    const auto parts = model::build_liouvillian(p, dims);
    const auto sys = make_engine_system(p, dims);

    DensityMatrix rho0;
    rho0.dims = dims;
    rho0.rho = product_state(fock_state(dims.n_cav, 1),
                             thermal_state(dims.n_mol, 0.5));
    for (const double t : {5.0, 20.0, 60.0}) {
        const auto rt = evolve(rho0, parts.full, t);
        const double n = expect_photon_number(sys, rt.rho);
        CHECK(std::abs(n - std::exp(-p.kappa0 * t)) < 1e-6);
    }
}

TEST_CASE("long-time propagation reproduces the null-space solution") {
    const auto p = engine_point();
    const hilbert::HilbertDims dims{5, 8};
    const auto parts = model::build_liouvillian(p, dims);
    const auto direct = steady_state(parts.full);

    auto rho = maximally_mixed(dims);
    double step_td = 1.0;
    for (int chunk = 0; chunk < 50 && step_td > 1e-9; ++chunk) {
        const auto next = evolve(rho, parts.full, 250.0);
        step_td = trace_distance(next.rho, rho.rho);
        rho = next;
    }
    CHECK(step_td <= 1e-9);  // converged, not just out of budget
    CHECK(trace_distance(rho.rho, direct.rho.rho) <= 1e-6);
    CHECK(std::abs(la::trace(rho.rho) - cplx{1.0, 0.0}) <= 1e-8);
}

TEST_CASE("heat currents: equilibrium zeros and route equivalence") {
    model::EngineParams p = decoupled_point();
    p.n_hot = 2.0;
    p.n_cold = 2.0;
    const hilbert::HilbertDims dims{12, 8};
    const auto sys = make_engine_system(p, dims);
    DensityMatrix eq;
    eq.dims = dims;
    eq.rho = product_state(thermal_state(dims.n_cav, 2.0),
                           thermal_state(dims.n_mol, 0.5));
    const auto q = heat_currents(sys, eq.rho);
    CHECK(std::abs(q.hot) < 1e-8);
    CHECK(std::abs(q.cold) < 1e-8);

    // matrix-form route equals the assembled-superoperator route
    const auto pe = engine_point();
    const auto parts = model::build_liouvillian(pe, {4, 6});
    const auto sys2 = make_engine_system(pe, {4, 6});
    std::mt19937_64 rng(99u);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    CMat rho(24, 24);
    for (std::size_t i = 0; i < 24; ++i) {
        rho(i, i) = {d(rng), 0.0};
        for (std::size_t j = i + 1; j < 24; ++j) {
            rho(i, j) = {d(rng), d(rng)};
            rho(j, i) = std::conj(rho(i, j));
        }
    }
    const auto qa = heat_currents(sys2, rho);
    const auto qb = heat_currents(parts, rho);
    CHECK(std::abs(qa.hot - qb.hot) < 1e-10 * std::max(1.0, std::abs(qa.hot)));
    CHECK(std::abs(qa.cold - qb.cold) <
          1e-10 * std::max(1.0, std::abs(qa.cold)));
}

TEST_CASE("thermo report: decoupled zeros and engine operation") {
    {
        model::EngineParams p = engine_point();
        p.g_omega = 0.0;
        const auto sys = make_engine_system(p, {6, 10});
        const auto ss = steady_state_ladder(sys, 1e-6, false);
        const auto t = thermo_report(sys, ss.rho);
        CHECK(t.p_np == 0.0);
        CHECK(t.dp_corr == 0.0);
    }
    {
        const auto p = decoupled_point();
        const hilbert::HilbertDims dims{10, 8};
        const auto sys = make_engine_system(p, dims);
        DensityMatrix eq;
        eq.dims = dims;
        eq.rho = product_state(thermal_state(dims.n_cav, 2.0),
                               thermal_state(dims.n_mol, 0.5));
        CHECK(std::abs(expect_photon_momentum(sys, eq.rho)) < 1e-12);
        CHECK(std::abs(expect_momentum(sys, eq.rho)) < 1e-12);
    }
    {
        // operating point: heat in from the hot bath, out to the cold
        const auto sys = make_engine_system(engine_point(), {8, 16});
        const auto ss = steady_state_ladder(sys, 1e-6, false);
        const auto t = thermo_report(sys, ss.rho);
        CHECK(t.q_hot > 0.0);
        CHECK(t.q_cold < 0.0);
        CHECK(t.p_eq7 > 0.0);
        CHECK(t.p_eq7 == t.q_hot + t.q_cold);  // first law, bit-level
    }
}

TEST_CASE("power identity at steady state") {
    for (const auto& [g, beta] :
         {std::pair{4.0, 1.0}, std::pair{8.0, 0.6}, std::pair{2.0, 1.8}}) {
        model::EngineParams p = engine_point();
        p.g_kappa = g;
        p.beta = beta;
        const auto sys = make_engine_system(p, {8, 14});
        const auto ss = steady_state_ladder(sys, 1e-6, false);
        const auto t = thermo_report(sys, ss.rho);
        CHECK(std::abs(t.p_eq7 - t.p_np) <=
              std::max(1e-8, 1e-4 * std::abs(t.p_eq7)));
    }
}

TEST_CASE("reduced states") {
    const hilbert::HilbertDims dims{3, 4};
    DensityMatrix rho;
    rho.dims = dims;
    const CMat cav = coherent_state(3, {0.4, -0.1});
    const CMat mol = thermal_state(4, 0.7);
    rho.rho = product_state(cav, mol);

    CMat dc = reduced_cavity(rho);
    dc -= cav;
    CHECK(la::max_abs(dc) < 1e-14);
    CMat dm = reduced_molecule(rho);
    dm -= mol;
    CHECK(la::max_abs(dm) < 1e-14);

    // embedded maximally entangled pair reduces to maximally mixed
    DensityMatrix bell;
    bell.dims = {2, 2};
    bell.rho = CMat(4, 4);
    bell.rho(0, 0) = 0.5;
    bell.rho(0, 3) = 0.5;
    bell.rho(3, 0) = 0.5;
    bell.rho(3, 3) = 0.5;
    const CMat rc = reduced_cavity(bell);
    CHECK(std::abs(rc(0, 0) - cplx{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(rc(1, 1) - cplx{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(rc(0, 1)) < 1e-15);

    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    DensityMatrix r;
    r.dims = dims;
    r.rho = CMat(12, 12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) r.rho(i, j) = {d(rng), d(rng)};
    CHECK(std::abs(la::trace(reduced_cavity(r)) - la::trace(r.rho)) < 1e-12);
    CHECK(std::abs(la::trace(reduced_molecule(r)) - la::trace(r.rho)) <
          1e-12);
}

TEST_CASE("g2 closed forms") {
    CHECK(g2(thermal_state(60, 1.0)) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(g2(coherent_state(30, {1.2, 0.0})) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(g2(fock_state(5, 1)) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)g2(fock_state(5, 0)), NumericalError);
}

TEST_CASE("converge_dims on the decoupled thermal configuration") {
    model::EngineParams p = decoupled_point();
    const auto rep = converge_dims(p, {8, 4}, 1e-3, 400u << 20);
    CHECK(rep.converged);
    // geometric-tail oracle: (nbar/(nbar+1))^n_cav below rtol needs
    // n_cav ~ ln(rtol)/ln(2/3) ~ 17; the accepted dims must cover it
    CHECK(rep.dims.n_cav >= 15);
    CHECK(rep.table.back().n_a == doctest::Approx(2.0).epsilon(5e-3));

    // with g_omega = 0 the molecular axis converges immediately
    bool mol_quiet = true;
    for (std::size_t i = 2; i < rep.table.size(); ++i)
        if (rep.table[i].dims.n_mol != rep.table[i - 1].dims.n_mol &&
            rep.table[i].delta > 1e-3)
            mol_quiet = false;
    CHECK(mol_quiet);
}

TEST_CASE("converge_dims shows shrinking deltas at a coupled point") {
    model::EngineParams p = engine_point();
    p.g_kappa = 2.0;
    const auto rep = converge_dims(p, {6, 10}, 2e-2, 400u << 20);
    REQUIRE(rep.table.size() >= 3);
    CHECK(rep.converged);
    const auto& t = rep.table;
    CHECK(t.back().delta < t[1].delta);
}
