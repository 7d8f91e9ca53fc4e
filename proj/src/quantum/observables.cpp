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

#include "ohe/quantum/observables.hpp"

#include <cmath>
#include <string>

namespace ohe::quantum {

namespace {

// Tr[H_a_eff M] with H_a_eff = hbar (omega_a + g_omega x) (x) n levels.
cplx h_a_eff_trace(const EngineSystem& s, const CMat& m) {
    const std::size_t nc = s.dims.n_cav, nm = s.dims.n_mol;
    cplx tr{0.0, 0.0};
    for (std::size_t n = 0; n < nc; ++n) {
        const double nn = static_cast<double>(n);
        // Tr over the (n,n) molecular block of (omega_a I + g_omega x) M_n
        for (std::size_t i = 0; i < nm; ++i) {
            tr += s.params.hbar * s.params.omega_a * nn *
                  m(n * nm + i, n * nm + i);
            for (std::size_t k = 0; k < nm; ++k)
                tr += s.params.hbar * s.params.g_omega * nn *
                      s.mol.x(i, k) * m(n * nm + k, n * nm + i);
        }
    }
    return tr;
}

double checked_real(cplx v, double scale, const char* what) {
    const double tol_err = std::max(1e-8, 1e-8 * scale);
    if (std::abs(v.imag()) > tol_err)
        throw NumericalError(std::string(what) +
                             ": imaginary residue above tolerance");
    return v.real();
}

}  // namespace

HeatCurrents heat_currents(const EngineSystem& s, const CMat& rho) {
    const CMat lh = apply_hot(s, rho);
    const CMat lc = apply_cold(s, rho);
    const double scale = s.params.hbar * s.params.omega_a * s.params.kappa0;
    HeatCurrents q;
    q.hot = checked_real(h_a_eff_trace(s, lh), scale, "heat_currents[hot]");
    q.cold = checked_real(h_a_eff_trace(s, lc), scale, "heat_currents[cold]");
    return q;
}

HeatCurrents heat_currents(const model::LiouvillianParts& parts,
                           const CMat& rho) {
    const la::cvec v = hilbert::vectorize(rho);
    const CMat heff = parts.h_a_eff.dense();
    auto contract = [&](const hilbert::SuperOperator& part) {
        const CMat m = hilbert::devectorize(part.apply(v));
        return la::trace(la::matmul(heff, m));
    };
    HeatCurrents q;
    const double scale = la::max_abs(heff);
    q.hot = checked_real(contract(parts.hot), scale, "heat_currents[hot]");
    q.cold = checked_real(contract(parts.cold), scale, "heat_currents[cold]");
    return q;
}

double expect_photon_number(const EngineSystem& s, const CMat& rho) {
    const std::size_t nc = s.dims.n_cav, nm = s.dims.n_mol;
    double v = 0.0;
    for (std::size_t n = 1; n < nc; ++n)
        for (std::size_t i = 0; i < nm; ++i)
            v += static_cast<double>(n) * rho(n * nm + i, n * nm + i).real();
    return v;
}

double expect_momentum(const EngineSystem& s, const CMat& rho) {
    const std::size_t nc = s.dims.n_cav, nm = s.dims.n_mol;
    cplx v{0.0, 0.0};
    for (std::size_t n = 0; n < nc; ++n)
        for (std::size_t i = 0; i < nm; ++i)
            for (std::size_t k = 0; k < nm; ++k)
                v += s.mol.p(i, k) * rho(n * nm + k, n * nm + i);
    return checked_real(v, 1.0, "expect_momentum");
}

double expect_photon_momentum(const EngineSystem& s, const CMat& rho) {
    const std::size_t nc = s.dims.n_cav, nm = s.dims.n_mol;
    cplx v{0.0, 0.0};
    for (std::size_t n = 1; n < nc; ++n)
        for (std::size_t i = 0; i < nm; ++i)
            for (std::size_t k = 0; k < nm; ++k)
                v += static_cast<double>(n) * s.mol.p(i, k) *
                     rho(n * nm + k, n * nm + i);
    return checked_real(v, 1.0, "expect_photon_momentum");
}

ThermoReport thermo_report(const EngineSystem& s, const DensityMatrix& rho) {
    ThermoReport r;
    const HeatCurrents q = heat_currents(s, rho.rho);
    r.q_hot = q.hot;
    r.q_cold = q.cold;
    r.p_eq7 = q.hot + q.cold;
    const double np = expect_photon_momentum(s, rho.rho);
    r.n_a = expect_photon_number(s, rho.rho);
    r.p_mean = expect_momentum(s, rho.rho);
    const double pref = -s.params.hbar * s.params.g_omega / s.params.mass;
    r.p_np = pref * np;
    r.dp_corr = pref * (np - r.n_a * r.p_mean);
    try {
        r.g2 = g2(reduced_cavity(rho));
    } catch (const NumericalError&) {
        r.g2 = 0.0;
        r.g2_defined = false;
    }
    return r;
}

ConvergenceReport converge_dims(const EngineParams& p, HilbertDims start,
                                double rtol, std::size_t mem_budget_bytes) {
    if (!(rtol > 0.0)) throw ConfigError("converge_dims: rtol must be > 0");
    ConvergenceReport rep;
    HilbertDims dims = start;
    bool grow_cav = true;

    auto ladder_bytes = [](const HilbertDims& d) {
        const std::size_t q = d.n_mol * d.n_mol;
        // Schur factors + coupling kernels + workspaces, 16 B per entry
        return (2 * d.n_cav + 6) * q * q * 16;
    };

    auto observe = [&](const HilbertDims& d) {
        const EngineSystem sys = make_engine_system(p, d);
        const SteadyStateResult ss =
            steady_state_ladder(sys, 1e-6, /*audit_positivity=*/false);
        const ThermoReport t = thermo_report(sys, ss.rho);
        ConvergenceRow row;
        row.dims = d;
        row.n_a = t.n_a;
        row.p_eq7 = t.p_eq7;
        row.g2 = t.g2;
        return row;
    };

    if (ladder_bytes(dims) > mem_budget_bytes)
        throw NumericalError("converge_dims: starting dims exceed the memory "
                             "budget");
    rep.table.push_back(observe(dims));
    for (int step = 0; step < 24; ++step) {
        HilbertDims next = dims;
        if (grow_cav)
            next.n_cav = next.n_cav + std::max<std::size_t>(1, next.n_cav / 4);
        else
            next.n_mol = next.n_mol + std::max<std::size_t>(1, next.n_mol / 4);
        grow_cav = !grow_cav;

        if (ladder_bytes(next) > mem_budget_bytes) {
            std::string msg =
                "converge_dims: memory budget exceeded before convergence; "
                "best so far n_cav=" + std::to_string(dims.n_cav) +
                " n_mol=" + std::to_string(dims.n_mol);
            throw NumericalError(msg);
        }
        ConvergenceRow row = observe(next);
        const ConvergenceRow& prev = rep.table.back();
        // absolute floors keep near-zero observables (equilibrium power,
        // empty cavity) from stalling the loop on solver-residual jitter
        auto rel = [](double a, double b, double floor) {
            return std::abs(a - b) /
                   std::max({std::abs(a), std::abs(b), floor});
        };
        const double p_floor = 1e-3 * p.hbar * p.omega_a * p.kappa0;
        row.delta = std::max({rel(row.n_a, prev.n_a, 1e-3),
                              rel(row.p_eq7, prev.p_eq7, p_floor),
                              rel(row.g2, prev.g2, 1e-2)});
        rep.table.push_back(row);
        dims = next;
        // two consecutive quiet refinements (one per axis) to accept
        if (rep.table.size() >= 3) {
            const double d1 = rep.table[rep.table.size() - 1].delta;
            const double d2 = rep.table[rep.table.size() - 2].delta;
            if (d1 < rtol && d2 < rtol) {
                rep.converged = true;
                rep.dims = rep.table[rep.table.size() - 3].dims;
                return rep;
            }
        }
    }
    rep.dims = dims;
    return rep;
}

}  // namespace ohe::quantum
