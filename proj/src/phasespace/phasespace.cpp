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

#include "ohe/phasespace/phasespace.hpp"

#include <cmath>

#include "ohe/util/parallel.hpp"

namespace ohe::phasespace {

void PhaseGrid::validate() const {
    if (r.size() < 2 || x.size() < 2)
        throw ConfigError("phase grid: need at least 2 points per axis");
    if (n_phi < 16) throw ConfigError("phase grid: n_phi must be >= 16");
    if (r.front() < 0.0 || r.front() > 0.5)
        throw ConfigError("phase grid: r must start near 0");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] <= r[i - 1])
            throw ConfigError("phase grid: r must be strictly increasing");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] <= x[i - 1])
            throw ConfigError("phase grid: x must be strictly increasing");
}

double max_reliable_amplitude(std::size_t levels, double tail_tol) {
    double lo = 0.0, hi = std::sqrt(static_cast<double>(levels));
    auto tail = [&](double r) {
        return coherent_amplitudes(levels, cplx{r, 0.0}).tail;
    };
    if (tail(hi) <= tail_tol) return hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tail(mid) <= tail_tol)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

PhaseGrid default_grid(std::size_t n_cav, std::size_t n_r, std::size_t n_x,
                       std::size_t n_phi, double tail_tol) {
    PhaseGrid g;
    g.n_phi = n_phi;
    const double r_cap = 0.8 * std::sqrt(static_cast<double>(n_cav));
    // slight margin keeps the sandwich gate from tripping on the equality
    const double r_max =
        std::min(r_cap, max_reliable_amplitude(n_cav, 0.98 * tail_tol));
    for (std::size_t i = 0; i < n_r; ++i)
        g.r.push_back(r_max * static_cast<double>(i + 1) /
                      static_cast<double>(n_r));
    for (std::size_t i = 0; i < n_x; ++i)
        g.x.push_back(-5.0 + 10.0 * static_cast<double>(i) /
                                 static_cast<double>(n_x - 1));
    return g;
}

std::vector<double> hermite_psi(std::size_t n, double x, double x0) {
    // psi_k(x) = (2 x0^2)^{-1/4} h_k(x / (x0 sqrt(2))) with h_k the
    // orthonormal Hermite functions; normalized recurrence, no factorials.
    std::vector<double> psi(n);
    const double xi = x / (x0 * std::sqrt(2.0));
    const double norm = std::pow(2.0 * x0 * x0, -0.25);
    double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * xi * xi);
    psi[0] = norm * h0;
    if (n == 1) return psi;
    double h1 = std::sqrt(2.0) * xi * h0;
    psi[1] = norm * h1;
    for (std::size_t k = 2; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double h2 = xi * std::sqrt(2.0 / kk) * h1 -
                          std::sqrt((kk - 1.0) / kk) * h0;
        psi[k] = norm * h2;
        h0 = h1;
        h1 = h2;
    }
    return psi;
}

CoherentVec coherent_amplitudes(std::size_t levels, cplx alpha) {
    CoherentVec c;
    c.amp.resize(levels);
    c.amp[0] = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 1; n < levels; ++n)
        c.amp[n] = c.amp[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    double mass = 0.0;
    for (const auto& a : c.amp) mass += std::norm(a);
    c.tail = std::max(0.0, 1.0 - mass);
    return c;
}

CoherentPositionProbe make_probe(const HilbertDims& dims, double r, double phi,
                                 double x, double x0) {
    CoherentPositionProbe p;
    const cplx alpha = r * cplx{std::cos(phi), std::sin(phi)};
    CoherentVec c = coherent_amplitudes(dims.n_cav, alpha);
    p.coherent = std::move(c.amp);
    p.fock_tail = c.tail;
    p.position = hermite_psi(dims.n_mol, x, x0);
    return p;
}

std::vector<double> phase_sandwich(const CMat& m, const HilbertDims& dims,
                                   const PhaseGrid& grid, double x0) {
    grid.validate();
    const std::size_t nc = dims.n_cav, nm = dims.n_mol;
    if (m.rows() != nc * nm)
        throw DimensionError("phase_sandwich: matrix/dims mismatch");
    const double tail =
        coherent_amplitudes(nc, cplx{grid.r.back(), 0.0}).tail;
    if (tail > 1e-6)
        throw NumericalError(
            "phase_sandwich: grid too large, coherent Fock tail " +
            std::to_string(tail) + " at r_max exceeds 1e-6");

    const std::size_t n_r = grid.r.size(), n_x = grid.x.size();
    std::vector<double> out(n_r * n_x, 0.0);

    // precompute the phi ring of coherent vectors for each r
    const std::size_t n_phi = grid.n_phi;
    std::vector<la::cvec> rings(n_r * n_phi);
    for (std::size_t ir = 0; ir < n_r; ++ir)
        for (std::size_t ip = 0; ip < n_phi; ++ip) {
            const double phi =
                2.0 * M_PI * static_cast<double>(ip) /
                static_cast<double>(n_phi);
            rings[ir * n_phi + ip] =
                coherent_amplitudes(
                    nc, grid.r[ir] * cplx{std::cos(phi), std::sin(phi)})
                    .amp;
        }

    util::parallel_for(n_x, 0, [&](std::size_t ix) {
        const std::vector<double> psi = hermite_psi(nm, grid.x[ix], x0);
        la::cvec psic(nm);
        for (std::size_t i = 0; i < nm; ++i) psic[i] = psi[i];
        // cavity-contracted matrix B_{n,n'} = psi^T M_block(n,n') psi
        CMat b(nc, nc);
        la::cvec tmp(nm);
        for (std::size_t n = 0; n < nc; ++n)
            for (std::size_t q = 0; q < nc; ++q) {
                // rows of M are contiguous; contract the molecular indices
                cplx acc{0.0, 0.0};
                for (std::size_t i = 0; i < nm; ++i) {
                    const cplx rowdot = kern::active().zdotu(
                        nm, m.row(n * nm + i) + q * nm, psic.data());
                    acc += psi[i] * rowdot;
                }
                b(n, q) = acc;
            }
        const double wphi = 2.0 * M_PI / static_cast<double>(n_phi);
        for (std::size_t ir = 0; ir < n_r; ++ir) {
            double sum = 0.0;
            for (std::size_t ip = 0; ip < n_phi; ++ip) {
                const la::cvec& cvecr = rings[ir * n_phi + ip];
                // <c| B |c>
                cplx val{0.0, 0.0};
                for (std::size_t n = 0; n < nc; ++n)
                    val += std::conj(cvecr[n]) *
                           kern::active().zdotu(nc, b.row(n), cvecr.data());
                sum += val.real();
            }
            out[ir * n_x + ix] =
                (1.0 / M_PI) * grid.r[ir] * wphi * sum;
        }
    });
    return out;
}

std::vector<double> husimi(const DensityMatrix& rho, const PhaseGrid& grid,
                           double x0) {
    return phase_sandwich(rho.rho, rho.dims, grid, x0);
}

std::vector<double> source_density(const EngineSystem& sys,
                                   const DensityMatrix& rho,
                                   const PhaseGrid& grid) {
    CMat m = quantum::apply_hot(sys, rho.rho);
    m += quantum::apply_cold(sys, rho.rho);
    return phase_sandwich(m, rho.dims, grid, sys.params.x_zpf());
}

void flow_field(PhaseField& field) {
    const std::size_t n_r = field.grid.r.size(), n_x = field.grid.x.size();
    if (field.d.size() != n_r * n_x)
        throw DimensionError("flow_field: D not computed on this grid");
    field.u.assign(n_r * n_x, 0.0);
    field.v.assign(n_r * n_x, 0.0);
    const double dr = field.grid.dr(), dx = field.grid.dx();
    // u(r', x) = -int_0^{r'} D dr: the first grid row carries the segment
    // from r = 0 (where D vanishes with the measure r) to r_0.
    for (std::size_t ix = 0; ix < n_x; ++ix) {
        double acc = -0.5 * field.grid.r.front() * field.d[ix];
        field.u[ix] = acc;
        for (std::size_t ir = 1; ir < n_r; ++ir) {
            acc -= 0.5 * dr *
                   (field.d[(ir - 1) * n_x + ix] + field.d[ir * n_x + ix]);
            field.u[ir * n_x + ix] = acc;
        }
    }
    for (std::size_t ir = 0; ir < n_r; ++ir) {
        double acc = 0.0;  // lower x edge anchors v = 0
        field.v[ir * n_x] = acc;
        for (std::size_t ix = 1; ix < n_x; ++ix) {
            acc += 0.5 * dx *
                   (field.d[ir * n_x + ix - 1] + field.d[ir * n_x + ix]);
            field.v[ir * n_x + ix] = acc;
        }
    }
}

double matched_divergence_max(const PhaseField& field) {
    const std::size_t n_r = field.grid.r.size(), n_x = field.grid.x.size();
    const double dr = field.grid.dr(), dx = field.grid.dx();
    double worst = 0.0;
    for (std::size_t ir = 0; ir + 1 < n_r; ++ir)
        for (std::size_t ix = 0; ix + 1 < n_x; ++ix) {
            const auto u = [&](std::size_t a, std::size_t b) {
                return field.u[a * n_x + b];
            };
            const auto v = [&](std::size_t a, std::size_t b) {
                return field.v[a * n_x + b];
            };
            const double du = ((u(ir + 1, ix) + u(ir + 1, ix + 1)) -
                               (u(ir, ix) + u(ir, ix + 1))) /
                              (2.0 * dr);
            const double dv = ((v(ir, ix + 1) + v(ir + 1, ix + 1)) -
                               (v(ir, ix) + v(ir + 1, ix))) /
                              (2.0 * dx);
            worst = std::max(worst, std::abs(du + dv));
        }
    return worst;
}

double central_divergence_max(const PhaseField& field) {
    const std::size_t n_r = field.grid.r.size(), n_x = field.grid.x.size();
    const double dr = field.grid.dr(), dx = field.grid.dx();
    double worst = 0.0;
    for (std::size_t ir = 1; ir + 1 < n_r; ++ir)
        for (std::size_t ix = 1; ix + 1 < n_x; ++ix) {
            const double du = (field.u[(ir + 1) * n_x + ix] -
                               field.u[(ir - 1) * n_x + ix]) /
                              (2.0 * dr);
            const double dv = (field.v[ir * n_x + ix + 1] -
                               field.v[ir * n_x + ix - 1]) /
                              (2.0 * dx);
            worst = std::max(worst, std::abs(du + dv));
        }
    return worst;
}

PhaseField phase_field(const EngineSystem& sys, const DensityMatrix& rho,
                       const PhaseGrid& grid) {
    PhaseField f;
    f.grid = grid;
    f.q = husimi(rho, grid, sys.params.x_zpf());
    f.d = source_density(sys, rho, grid);
    flow_field(f);
    return f;
}

std::vector<double> wigner_cavity(const CMat& rho_cav,
                                  const std::vector<double>& q_axis,
                                  const std::vector<double>& p_axis,
                                  double tail_tol) {
    const std::size_t levels = rho_cav.rows();
    double amax = 0.0;
    for (const double q : q_axis)
        for (const double p : p_axis)
            amax = std::max(amax, std::hypot(q, p));
    if (coherent_amplitudes(levels, cplx{amax, 0.0}).tail > tail_tol)
        throw NumericalError(
            "wigner_cavity: grid extends beyond Fock-tail reliability");

    std::vector<double> w(q_axis.size() * p_axis.size(), 0.0);
    util::parallel_for(q_axis.size(), 0, [&](std::size_t iq) {
        for (std::size_t ip = 0; ip < p_axis.size(); ++ip) {
            const cplx alpha{q_axis[iq], p_axis[ip]};
            const double z = 4.0 * std::norm(alpha);
            const cplx two_conj = 2.0 * std::conj(alpha);
            double val = 0.0;
            // sum over diagonals d = m - n >= 0 of the displaced-parity
            // kernel (2/pi) e^{-2|a|^2} (-1)^n t_{n,d} L_n^{(d)}(z)
            for (std::size_t d = 0; d < levels; ++d) {
                // t_{0,d} = (2 conj(alpha))^d / sqrt(d!)
                cplx t{1.0, 0.0};
                for (std::size_t k = 1; k <= d; ++k)
                    t *= two_conj / std::sqrt(static_cast<double>(k));
                double l_prev = 0.0;
                double l_cur = 1.0;  // L_0^{(d)}
                for (std::size_t n = 0; n + d < levels; ++n) {
                    const cplx rho_mn = rho_cav(n + d, n);  // <m=n+d| rho |n>
                    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
                    const cplx kernel = sign * t * l_cur;
                    if (d == 0)
                        val += (rho_mn * kernel).real();
                    else
                        val += 2.0 * (rho_mn * kernel).real();
                    // advance recurrences to n+1
                    const double nn = static_cast<double>(n);
                    const double dd = static_cast<double>(d);
                    const double l_next =
                        ((2.0 * nn + 1.0 + dd - z) * l_cur -
                         (nn + dd) * l_prev) /
                        (nn + 1.0);
                    l_prev = l_cur;
                    l_cur = l_next;
                    t *= std::sqrt((nn + 1.0) / (nn + 1.0 + dd));
                }
            }
            w[iq * p_axis.size() + ip] =
                (2.0 / M_PI) * std::exp(-2.0 * std::norm(alpha)) * val;
        }
    });
    return w;
}

std::vector<double> x_resolved_trace(const CMat& m, const HilbertDims& dims,
                                     const std::vector<double>& xs,
                                     double x0) {
    const std::size_t nc = dims.n_cav, nm = dims.n_mol;
    CMat mol(nm, nm);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t n = 0; n < nc; ++n)
                s += m(n * nm + i, n * nm + j);
            mol(i, j) = s;
        }
    std::vector<double> out(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const std::vector<double> psi = hermite_psi(nm, xs[k], x0);
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < nm; ++i)
            for (std::size_t j = 0; j < nm; ++j)
                s += psi[i] * mol(i, j) * psi[j];
        out[k] = s.real();
    }
    return out;
}

}  // namespace ohe::phasespace
