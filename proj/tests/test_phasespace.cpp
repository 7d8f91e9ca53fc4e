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

#include <algorithm>
#include <cmath>

#include "ohe/phasespace/phasespace.hpp"
#include "ohe/quantum/observables.hpp"

using namespace ohe;
using namespace ohe::phasespace;
using la::CMat;
using la::cplx;

namespace {

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

// shared case-B steady state (solved once; tests read it)
struct CaseB {
    model::EngineParams p;
    hilbert::HilbertDims dims{40, 20};
    quantum::EngineSystem sys;
    quantum::SteadyStateResult ss;

    CaseB() {
        p.beta = 1.5;
        p.g_kappa = 8.0;
        sys = quantum::make_engine_system(p, dims);
        ss = quantum::steady_state_ladder(sys, 1e-6, true);
    }
};

const CaseB& case_b() {
    static CaseB c;
    return c;
}

PhaseGrid wide_grid(std::size_t n_cav, std::size_t n_r, std::size_t n_x,
                    double x_lo, double x_hi) {
    PhaseGrid g;
    g.n_phi = 64;
    const double rmax = std::min(0.8 * std::sqrt(double(n_cav)),
                                 max_reliable_amplitude(n_cav, 0.98e-6));
    for (std::size_t i = 1; i <= n_r; ++i)
        g.r.push_back(rmax * double(i) / double(n_r));
    for (std::size_t i = 0; i < n_x; ++i)
        g.x.push_back(x_lo + (x_hi - x_lo) * double(i) / double(n_x - 1));
    return g;
}

// trapezoid along r including the [0, r_0] anchor segment
double r_integral(const std::vector<double>& d, const PhaseGrid& g,
                  std::size_t ix, std::size_t stride) {
    const std::size_t nx = g.x.size();
    double acc = 0.5 * g.r[stride - 1] * d[(stride - 1) * nx + ix];
    for (std::size_t ir = 2 * stride - 1; ir < g.r.size();
         ir += stride)
        acc += 0.5 * (g.r[ir] - g.r[ir - stride]) *
               (d[(ir - stride) * nx + ix] + d[ir * nx + ix]);
    return acc;
}

}  // namespace

TEST_CASE("hermite functions are orthonormal") {
    const std::size_t n = 24;
    const double lo = -20.0, hi = 20.0;
    const std::size_t steps = 8001;
    const double h = (hi - lo) / double(steps - 1);
    CMat gram(n, n);
    for (std::size_t s = 0; s < steps; ++s) {
        const double x = lo + h * double(s);
        const double w = (s == 0 || s + 1 == steps) ? 0.5 * h : h;
        const auto psi = hermite_psi(n, x, 1.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                gram(i, j) += w * psi[i] * psi[j];
    }
    CMat diff = gram;
    diff -= CMat::identity(n);
    CHECK(la::max_abs(diff) < 1e-10);
}

TEST_CASE("coherent-position probe") {
    const hilbert::HilbertDims dims{20, 12};
    const auto probe = make_probe(dims, 1.5, 0.7, -0.4, 1.0);
    CHECK(probe.fock_tail < 1e-8);
    const auto psi = hermite_psi(dims.n_mol, -0.4, 1.0);
    for (std::size_t i = 0; i < dims.n_mol; ++i)
        CHECK(probe.position[i] == psi[i]);
    double n2 = 0.0;
    for (const auto& a : probe.coherent) n2 += std::norm(a);
    CHECK(std::abs(n2 - 1.0) < 1e-8);
}

TEST_CASE("husimi of the vacuum product matches the closed form") {
    // Q(r, x) = 2 r e^{-r^2} (2 pi)^{-1/2} e^{-x^2/2} for |0><0| (x) ground
    const hilbert::HilbertDims dims{8, 10};
    quantum::DensityMatrix rho;
    rho.dims = dims;
    rho.rho = product_state(quantum::fock_state(8, 0),
                            quantum::fock_state(10, 0));
    PhaseGrid g = wide_grid(8, 40, 60, -4.0, 4.0);
    const auto q = husimi(rho, g, 1.0);
    double worst = 0.0;
    for (std::size_t ir = 0; ir < g.r.size(); ++ir)
        for (std::size_t ix = 0; ix < g.x.size(); ++ix) {
            const double expect = 2.0 * g.r[ir] *
                                  std::exp(-g.r[ir] * g.r[ir]) *
                                  std::exp(-0.5 * g.x[ix] * g.x[ix]) /
                                  std::sqrt(2.0 * M_PI);
            worst = std::max(worst,
                             std::abs(q[ir * g.x.size() + ix] - expect));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("husimi normalization and bimodality at the case-B point") {
    const CaseB& cb = case_b();
    PhaseGrid g = wide_grid(cb.dims.n_cav, 160, 110, -6.0, 9.0);
    const auto q = husimi(cb.ss.rho, g, 1.0);
    double qsum = 0.0, qmin = 1e300;
    for (const double v : q) {
        qsum += v;
        qmin = std::min(qmin, v);
    }
    qsum *= g.dr() * g.dx();
    CHECK(std::abs(qsum - 1.0) <= 1e-2);
    // positivity up to the audited Caldeira-Leggett negativity of the state
    const double bound = std::max(1e-12, 4.0 * std::abs(std::min(
                                              0.0, cb.ss.min_eig)));
    CHECK(qmin >= -bound);

    std::vector<double> marg(g.x.size(), 0.0);
    for (std::size_t ix = 0; ix < g.x.size(); ++ix)
        for (std::size_t ir = 0; ir < g.r.size(); ++ir)
            marg[ix] += q[ir * g.x.size() + ix] * g.dr();
    const double mmax = *std::max_element(marg.begin(), marg.end());
    int maxima = 0;
    for (std::size_t ix = 1; ix + 1 < g.x.size(); ++ix)
        if (marg[ix] > marg[ix - 1] && marg[ix] >= marg[ix + 1] &&
            marg[ix] > 0.05 * mmax)
            ++maxima;
    CHECK(maxima == 2);
}

TEST_CASE("phi quadrature is converged at the default sampling") {
    const CaseB& cb = case_b();
    PhaseGrid g32 = wide_grid(cb.dims.n_cav, 24, 20, -4.0, 6.0);
    g32.n_phi = 32;
    PhaseGrid g64 = g32;
    g64.n_phi = 64;
    const auto a = husimi(cb.ss.rho, g32, 1.0);
    const auto b = husimi(cb.ss.rho, g64, 1.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a[k] - b[k]));
    CHECK(worst <= 1e-10);

    // a coherence-carrying state still converges once n_phi exceeds the
    // Fock bandwidth
    const hilbert::HilbertDims dims{20, 6};
    quantum::DensityMatrix rho;
    rho.dims = dims;
    rho.rho = product_state(quantum::coherent_state(20, {1.0, 0.3}),
                            quantum::fock_state(6, 0));
    PhaseGrid h32 = wide_grid(20, 16, 12, -2.0, 2.0);
    h32.n_phi = 32;
    PhaseGrid h64 = h32;
    h64.n_phi = 64;
    const auto ca = husimi(rho, h32, 1.0);
    const auto cbv = husimi(rho, h64, 1.0);
    double w2 = 0.0;
    for (std::size_t k = 0; k < ca.size(); ++k)
        w2 = std::max(w2, std::abs(ca[k] - cbv[k]));
    CHECK(w2 <= 1e-10);
}

TEST_CASE("oversized grids are rejected") {
    const hilbert::HilbertDims dims{6, 6};
    quantum::DensityMatrix rho;
    rho.dims = dims;
    rho.rho = product_state(quantum::fock_state(6, 0),
                            quantum::fock_state(6, 0));
    PhaseGrid g;
    g.n_phi = 32;
    for (int i = 1; i <= 20; ++i) g.r.push_back(0.3 * i);  // r up to 6
    for (int i = 0; i < 10; ++i) g.x.push_back(-2.0 + 0.4 * i);
    CHECK_THROWS_AS((void)husimi(rho, g, 1.0), NumericalError);
}

TEST_CASE("source density vanishes at decoupled equilibrium") {
    model::EngineParams p;
    p.g_omega = 0.0;
    p.g_kappa = 0.0;
    p.beta = 0.0;
    p.theta = 0.0;
    p.n_th = 0.0;
    p.n_hot = 2.0;
    p.n_cold = 2.0;
    const hilbert::HilbertDims dims{20, 8};
    const auto sys = quantum::make_engine_system(p, dims);
    quantum::DensityMatrix eq;
    eq.dims = dims;
    eq.rho = product_state(quantum::thermal_state(dims.n_cav, 2.0),
                           quantum::thermal_state(dims.n_mol, 0.5));
    const PhaseGrid g = wide_grid(dims.n_cav, 40, 40, -4.0, 4.0);
    const auto d = source_density(sys, eq, g);
    double worst = 0.0;
    for (const double v : d) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-8);
}

TEST_CASE("source density integrates to the trace change") {
    // The per-slice identity compares against the full radial half-line,
    // so the cavity truncation must leave headroom for the populated
    // levels' radial mass inside the probe-tail gate: generous n_cav.
    model::EngineParams p;
    p.beta = 1.5;
    p.g_kappa = 8.0;
    const hilbert::HilbertDims dims{80, 14};
    const auto sys = quantum::make_engine_system(p, dims);
    const auto ss = quantum::steady_state_ladder(sys, 1e-6, false);
    PhaseGrid g = wide_grid(dims.n_cav, 720, 111, -10.0, 12.0);
    g.n_phi = 16;  // the steady state carries no photon-number coherence
    const auto d = source_density(sys, ss.rho, g);
    const std::size_t nx = g.x.size();

    // Richardson-extrapolated trapezoid kills the O(h^2) quadrature term
    CMat m = quantum::apply_hot(sys, ss.rho.rho);
    m += quantum::apply_cold(sys, ss.rho.rho);
    const auto tx = x_resolved_trace(m, dims, g.x, 1.0);
    std::vector<double> slice(nx);
    double worst_slice = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double fine = r_integral(d, g, ix, 1);
        const double coarse = r_integral(d, g, ix, 2);
        slice[ix] = (4.0 * fine - coarse) / 3.0;
        worst_slice = std::max(worst_slice, std::abs(slice[ix] - tx[ix]));
    }
    CHECK(worst_slice <= 1e-8);

    // whole-plane integral balances the Brownian part: zero total trace
    // change from the reservoir dissipators at steady state
    auto x_trap = [&](std::size_t stride) {
        double acc = 0.0;
        for (std::size_t ix = stride; ix < nx; ix += stride)
            acc += 0.5 * (g.x[ix] - g.x[ix - stride]) *
                   (slice[ix - stride] + slice[ix]);
        return acc;
    };
    const double tsum = (4.0 * x_trap(1) - x_trap(2)) / 3.0;
    CHECK(std::abs(tsum) <= 1e-6);
}

TEST_CASE("flow field anchors and discrete divergence") {
    const CaseB& cb = case_b();
    const PhaseGrid g = wide_grid(cb.dims.n_cav, 60, 50, -5.0, 8.0);
    PhaseField f;
    f.grid = g;
    f.q = husimi(cb.ss.rho, g, 1.0);
    f.d = source_density(cb.sys, cb.ss.rho, g);
    flow_field(f);

    double dmax = 0.0;
    for (const double v : f.d) dmax = std::max(dmax, std::abs(v));

    // v anchored at the lower x edge; u vanishes toward r = 0
    for (std::size_t ir = 0; ir < g.r.size(); ++ir)
        CHECK(f.v[ir * g.x.size()] == 0.0);
    for (std::size_t ix = 0; ix < g.x.size(); ++ix)
        CHECK(std::abs(f.u[ix]) <= 0.5 * g.r.front() * dmax);

    CHECK(matched_divergence_max(f) <= 1e-8 * dmax);
    // central differences carry the O(h^2) cross term; diagnostic only
    CHECK(central_divergence_max(f) <= 1.0 * dmax);
}

TEST_CASE("wigner closed forms") {
    std::vector<double> ax;
    const double ext = max_reliable_amplitude(30) / std::sqrt(2.0);
    for (int i = 0; i <= 100; ++i)
        ax.push_back(-ext + 2.0 * ext * i / 100.0);
    const double h = ax[1] - ax[0];

    const auto wv = wigner_cavity(quantum::fock_state(30, 0), ax, ax);
    double worst = 0.0, wsum = 0.0;
    for (std::size_t iq = 0; iq <= 100; ++iq)
        for (std::size_t ip = 0; ip <= 100; ++ip) {
            const double a2 = ax[iq] * ax[iq] + ax[ip] * ax[ip];
            worst = std::max(worst, std::abs(wv[iq * 101 + ip] -
                                             (2.0 / M_PI) *
                                                 std::exp(-2.0 * a2)));
            wsum += wv[iq * 101 + ip] * h * h;
        }
    CHECK(worst < 1e-8);
    CHECK(wv[50 * 101 + 50] == doctest::Approx(2.0 / M_PI).epsilon(1e-8));
    CHECK(std::abs(wsum - 1.0) < 1e-4);

    // displaced gaussian for a coherent state, peaked at beta
    const cplx beta{0.8, -0.5};
    const auto wc = wigner_cavity(quantum::coherent_state(30, beta), ax, ax);
    double wmax = -1e300;
    double qpk = 0.0, ppk = 0.0;
    for (std::size_t iq = 0; iq <= 100; ++iq)
        for (std::size_t ip = 0; ip <= 100; ++ip)
            if (wc[iq * 101 + ip] > wmax) {
                wmax = wc[iq * 101 + ip];
                qpk = ax[iq];
                ppk = ax[ip];
            }
    CHECK(std::abs(qpk - beta.real()) <= h);
    CHECK(std::abs(ppk - beta.imag()) <= h);
    // exact-point evaluation dodges the grid-sampling dip
    const auto wpk = wigner_cavity(quantum::coherent_state(30, beta),
                                   {beta.real()}, {beta.imag()});
    CHECK(wpk[0] == doctest::Approx(2.0 / M_PI).epsilon(1e-8));

    // single-photon negativity at the origin
    const auto wf = wigner_cavity(quantum::fock_state(30, 1), ax, ax);
    CHECK(wf[50 * 101 + 50] == doctest::Approx(-2.0 / M_PI).epsilon(1e-8));

    // out-of-range grids are refused
    std::vector<double> big = {0.0, 10.0};
    CHECK_THROWS_AS(
        (void)wigner_cavity(quantum::fock_state(10, 0), big, big),
        NumericalError);
}

TEST_CASE("source density injects on the hot side and drains on the cold") {
    const CaseB& cb = case_b();
    PhaseGrid g = wide_grid(cb.dims.n_cav, 80, 100, -6.0, 9.0);
    g.n_phi = 32;
    PhaseField f;
    f.grid = g;
    f.q = husimi(cb.ss.rho, g, 1.0);
    f.d = source_density(cb.sys, cb.ss.rho, g);
    flow_field(f);

    const std::size_t nx = g.x.size();
    double hot_moment = 0.0, cold_moment = 0.0;
    double hot_max = -1e300, hot_min = 1e300;
    for (std::size_t ir = 0; ir < g.r.size(); ++ir)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = f.d[ir * nx + ix];
            if (g.x[ix] < 0.0) {
                hot_moment += g.r[ir] * v;
                hot_max = std::max(hot_max, v);
                hot_min = std::min(hot_min, v);
            } else {
                cold_moment += g.r[ir] * v;
            }
        }
    // net radial transport: outward where the hot reservoir feeds the
    // cavity, inward where the cold reservoir drains it
    CHECK(hot_moment > 0.0);
    CHECK(cold_moment < 0.0);
    // and the local pattern carries both signs on the hot side
    CHECK(hot_max > 0.0);
    CHECK(hot_min < 0.0);

    const std::size_t irm = g.r.size() / 2;
    double u_hot = 0.0, u_cold = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix)
        (g.x[ix] < 0.0 ? u_hot : u_cold) += f.u[irm * nx + ix];
    CHECK(u_hot > 0.0);
    CHECK(u_cold < 0.0);
}
