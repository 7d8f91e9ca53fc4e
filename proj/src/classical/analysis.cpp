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

#include "ohe/classical/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace ohe::classical {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::fixed_point: return "fixed_point";
        case Regime::limit_cycle: return "limit_cycle";
        case Regime::bistable: return "bistable";
        default: return "undetermined";
    }
}

std::size_t StabilityReport::stable_count() const {
    std::size_t c = 0;
    for (const auto& f : points)
        if (f.kind == FixedPoint::Kind::stable) ++c;
    return c;
}

namespace {

// force balance whose roots are the fixed points
double balance(double x, const EngineParams& p) {
    return p.hbar * p.g_omega * model::n_eff(x, p) +
           model::potential_derivs(x, p).first;
}

double balance_deriv(double x, const EngineParams& p) {
    // d n_eff/dx = g_kappa sigma (1 - sigma) (n_cold - n_hot),
    // sigma = 1 / (1 + exp(g_kappa x))
    const double s = 1.0 / (1.0 + std::exp(p.g_kappa * x));
    const double dneff = p.g_kappa * s * (1.0 - s) * (p.n_cold - p.n_hot);
    return p.hbar * p.g_omega * dneff + model::potential_derivs(x, p).second;
}

double refine_root(double lo, double hi, const EngineParams& p) {
    double flo = balance(lo, p);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = balance(mid, p);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double f = balance(x, p);
        const double d = balance_deriv(x, p);
        if (d == 0.0) break;
        const double step = f / d;
        if (!std::isfinite(step) || std::abs(step) > (hi - lo) + 1e-6) break;
        x -= step;
    }
    return x;
}

}  // namespace

StabilityReport find_fixed_points(const EngineParams& p, double x_lo,
                                  double x_hi, double step) {
    StabilityReport rep;
    double prev_x = x_lo;
    double prev_f = balance(prev_x, p);
    for (double x = x_lo + step; x <= x_hi + 0.5 * step; x += step) {
        const double f = balance(x, p);
        if ((prev_f <= 0.0) != (f <= 0.0) || prev_f == 0.0) {
            FixedPoint fp;
            fp.x = prev_f == 0.0 ? prev_x : refine_root(prev_x, x, p);
            fp.n = model::n_eff(fp.x, p);
            fp.residual = std::abs(balance(fp.x, p));
            const double s = 1.0 / (1.0 + std::exp(p.g_kappa * fp.x));
            const double dneff =
                p.g_kappa * s * (1.0 - s) * (p.n_cold - p.n_hot);
            const double mg = p.mass * p.gamma;
            fp.jac[0][0] = -p.kappa0;
            fp.jac[0][1] = p.kappa0 * dneff;
            fp.jac[1][0] = -p.hbar * p.g_omega / mg;
            fp.jac[1][1] = -model::potential_derivs(fp.x, p).second / mg;
            const double tr = fp.jac[0][0] + fp.jac[1][1];
            const double det = fp.jac[0][0] * fp.jac[1][1] -
                               fp.jac[0][1] * fp.jac[1][0];
            const double disc = tr * tr - 4.0 * det;
            if (disc >= 0.0) {
                const double r = std::sqrt(disc);
                fp.eig[0] = 0.5 * (tr - r);
                fp.eig[1] = 0.5 * (tr + r);
            } else {
                const double r = std::sqrt(-disc);
                fp.eig[0] = {0.5 * tr, -0.5 * r};
                fp.eig[1] = {0.5 * tr, 0.5 * r};
            }
            if (det < 0.0)
                fp.kind = FixedPoint::Kind::saddle;
            else if (std::max(fp.eig[0].real(), fp.eig[1].real()) < 0.0)
                fp.kind = FixedPoint::Kind::stable;
            else
                fp.kind = FixedPoint::Kind::unstable;
            rep.points.push_back(fp);
        }
        prev_x = x;
        prev_f = f;
    }
    return rep;
}

CycleDetection detect_cycle(const ClassicalTrajectory& traj, double t_start,
                            double spread_tol) {
    CycleDetection det;
    const std::size_t n = traj.size();
    std::size_t i0 = 0;
    while (i0 < n && traj.t[i0] < t_start) ++i0;
    if (n - i0 < 16) return det;

    double xmin = traj.x[i0], xmax = traj.x[i0];
    for (std::size_t i = i0; i < n; ++i) {
        xmin = std::min(xmin, traj.x[i]);
        xmax = std::max(xmax, traj.x[i]);
    }
    if (xmax - xmin < 1e-6) return det;  // flat: settled, not oscillating

    // time-weighted mean so adaptive (non-uniform) samples work too
    double area = 0.0;
    for (std::size_t i = i0; i + 1 < n; ++i)
        area += 0.5 * (traj.x[i] + traj.x[i + 1]) *
                (traj.t[i + 1] - traj.t[i]);
    const double mean = area / (traj.t[n - 1] - traj.t[i0]);

    for (std::size_t i = i0; i + 1 < n; ++i) {
        if (traj.x[i] < mean && traj.x[i + 1] >= mean) {
            const double f = (mean - traj.x[i]) / (traj.x[i + 1] - traj.x[i]);
            det.crossings.push_back(traj.t[i] +
                                    f * (traj.t[i + 1] - traj.t[i]));
        }
    }
    if (det.crossings.size() < 6) return det;
    const std::size_t m = det.crossings.size();
    double tmin = 1e300, tmax = 0.0, tsum = 0.0;
    for (std::size_t k = m - 5; k < m; ++k) {
        const double dt = det.crossings[k] - det.crossings[k - 1];
        tmin = std::min(tmin, dt);
        tmax = std::max(tmax, dt);
        tsum += dt;
    }
    det.period = tsum / 5.0;
    det.spread = (tmax - tmin) / det.period;
    det.found = det.spread <= spread_tol;
    return det;
}

namespace {

// Cubic Hermite evaluation on one sample interval, with derivatives from
// the exact right-hand side; keeps the endpoint states of the cycle
// quadrature at O(h^4) so the closed-loop energy residual is resolvable.
struct HermiteSeg {
    double t0, h;
    double n0, n1, dn0, dn1;
    double x0, x1, dx0, dx1;

    // derivatives by centered differences so arbitrary sampled loops
    // (not only solutions of the engine equations) interpolate correctly
    static double slope(const std::vector<double>& t,
                        const std::vector<double>& y, std::size_t i) {
        const std::size_t lo = i > 0 ? i - 1 : i;
        const std::size_t hi = i + 1 < t.size() ? i + 1 : i;
        return (y[hi] - y[lo]) / (t[hi] - t[lo]);
    }

    static HermiteSeg make(const ClassicalTrajectory& traj, std::size_t i) {
        HermiteSeg s;
        s.t0 = traj.t[i];
        s.h = traj.t[i + 1] - traj.t[i];
        s.n0 = traj.n_a[i];
        s.n1 = traj.n_a[i + 1];
        s.dn0 = slope(traj.t, traj.n_a, i);
        s.dn1 = slope(traj.t, traj.n_a, i + 1);
        s.x0 = traj.x[i];
        s.x1 = traj.x[i + 1];
        s.dx0 = slope(traj.t, traj.x, i);
        s.dx1 = slope(traj.t, traj.x, i + 1);
        return s;
    }

    static double eval(double y0, double y1, double d0, double d1, double h,
                       double u) {
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 +
               (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
    }
    static double deriv(double y0, double y1, double d0, double d1, double h,
                        double u) {
        const double u2 = u * u;
        return ((6 * u2 - 6 * u) * y0 + (3 * u2 - 4 * u + 1) * h * d0 +
                (-6 * u2 + 6 * u) * y1 + (3 * u2 - 2 * u) * h * d1) /
               h;
    }

    double x_at(double u) const { return eval(x0, x1, dx0, dx1, h, u); }
    double dx_at(double u) const { return deriv(x0, x1, dx0, dx1, h, u); }
    double n_at(double u) const { return eval(n0, n1, dn0, dn1, h, u); }

    // solve x(u) = level by Newton from the linear guess
    double crossing(double level) const {
        double u = (level - x0) / (x1 - x0);
        for (int it = 0; it < 30; ++it) {
            const double f = x_at(u) - level;
            const double df = dx_at(u);
            if (df == 0.0) break;
            const double step = f / df;
            u -= step;
            u = std::clamp(u, 0.0, 1.0);
            if (std::abs(step) < 1e-15) break;
        }
        return u;
    }
};

}  // namespace

CycleMetrics cycle_power(const ClassicalTrajectory& traj,
                         const EngineParams& p) {
    CycleMetrics m;
    const double t_end = traj.t.back();
    const CycleDetection det = detect_cycle(traj, 0.5 * t_end, 1e-3);
    if (!det.found)
        throw NumericalError("cycle_power: trajectory has no settled cycle");
    m.regime = Regime::limit_cycle;
    m.period = det.period;
    m.period_spread = det.spread;

    // refine the last two upward crossings with Hermite interpolation
    const double mean_level = [&] {
        // same windowed time-average detect_cycle used
        std::size_t i0 = 0;
        while (i0 < traj.size() && traj.t[i0] < 0.5 * t_end) ++i0;
        double area = 0.0;
        for (std::size_t i = i0; i + 1 < traj.size(); ++i)
            area += 0.5 * (traj.x[i] + traj.x[i + 1]) *
                    (traj.t[i + 1] - traj.t[i]);
        return area / (traj.t.back() - traj.t[i0]);
    }();

    std::size_t ia = 0, ib = 0;
    {
        const double ca_lin = det.crossings[det.crossings.size() - 2];
        const double cb_lin = det.crossings.back();
        while (ia + 2 < traj.size() && traj.t[ia + 1] <= ca_lin) ++ia;
        ib = ia;
        while (ib + 2 < traj.size() && traj.t[ib + 1] <= cb_lin) ++ib;
    }
    const HermiteSeg sega = HermiteSeg::make(traj, ia);
    const HermiteSeg segb = HermiteSeg::make(traj, ib);
    const double ua = sega.crossing(mean_level);
    const double ub = segb.crossing(mean_level);
    const double ca = sega.t0 + ua * sega.h;
    const double cb = segb.t0 + ub * segb.h;
    const double t_loop = cb - ca;
    const double na = sega.n_at(ua), xa = sega.x_at(ua);
    const double nb = segb.n_at(ub), xb = segb.x_at(ub);

    // P T = oint F dx with F = -hbar g_omega n_a; trapezoid in x so that
    // traversing the loop backwards flips the sign.
    double work = 0.0;
    double nprev = na, xprev = xa;
    m.loop_t.push_back(ca);
    m.loop_n.push_back(na);
    m.loop_x.push_back(xa);
    for (std::size_t i = ia + 1; i <= ib && traj.t[i] < cb; ++i) {
        work += -p.hbar * p.g_omega * 0.5 * (nprev + traj.n_a[i]) *
                (traj.x[i] - xprev);
        nprev = traj.n_a[i];
        xprev = traj.x[i];
        m.loop_t.push_back(traj.t[i]);
        m.loop_n.push_back(nprev);
        m.loop_x.push_back(xprev);
    }
    work += -p.hbar * p.g_omega * 0.5 * (nprev + nb) * (xb - xprev);
    m.loop_t.push_back(cb);
    m.loop_n.push_back(nb);
    m.loop_x.push_back(xb);

    m.avg_power = work / t_loop;
    m.work = m.avg_power * m.period;

    // cycle-averaged internal-energy change; vanishes on a periodic loop
    const double ea = p.hbar * (p.omega_a + p.g_omega * xa) * na;
    const double eb = p.hbar * (p.omega_a + p.g_omega * xb) * nb;
    m.energy_loop_term = std::abs(eb - ea) / t_loop;
    return m;
}

CycleMetrics classify_regime(const EngineParams& p,
                             const ClassifyOptions& opt) {
    const double n_hi = opt.n_hi < 0.0 ? std::max(p.n_hot, p.n_cold) : opt.n_hi;
    std::vector<ClassicalState> probes = {
        {opt.n_lo, opt.x_lo},
        {opt.n_lo, opt.x_hi},
        {n_hi, opt.x_lo},
        {n_hi, opt.x_hi},
    };
    const StabilityReport rep = find_fixed_points(p);
    for (const auto& fp : rep.points)
        if (fp.kind == FixedPoint::Kind::stable)
            probes.push_back({fp.n + 1e-3, fp.x + 1e-3});

    std::vector<double> attractors;  // settled x values, clustered
    CycleMetrics cycle;
    bool have_cycle = false;
    bool inconclusive = false;

    for (const auto& s0 : probes) {
        const ClassicalTrajectory traj =
            simulate(s0, p, opt.t_max, opt.dt, opt.store_every, 1e-12);
        const Deriv d_end = rhs(traj.state(traj.size() - 1), p);
        const bool settled =
            std::abs(d_end.dn) < 1e-9 && std::abs(d_end.dx) < 1e-9;
        if (settled) {
            const double xf = traj.x.back();
            bool known = false;
            for (const double a : attractors)
                if (std::abs(a - xf) < 1e-3) known = true;
            if (!known) attractors.push_back(xf);
            continue;
        }
        const CycleDetection det =
            detect_cycle(traj, 0.5 * traj.t.back(), opt.period_spread_tol);
        if (det.found) {
            if (!have_cycle) {
                cycle = cycle_power(traj, p);
                have_cycle = true;
            }
        } else {
            inconclusive = true;
        }
    }

    CycleMetrics out;
    if (have_cycle && attractors.empty()) {
        out = cycle;
        out.regime = Regime::limit_cycle;
    } else if (!have_cycle && !inconclusive && attractors.size() == 1) {
        out.regime = Regime::fixed_point;
        out.avg_power = 0.0;
    } else if (!inconclusive &&
               attractors.size() + (have_cycle ? 1 : 0) >= 2) {
        out.regime = Regime::bistable;
        out.avg_power = 0.0;
        out.note = have_cycle ? "cycle coexists with a point attractor" : "";
    } else {
        out.regime = Regime::undetermined;
        out.note = "probe transients did not resolve within t_max";
    }
    return out;
}

std::optional<double> positive_inflection(const EngineParams& p) {
    const double step = 1e-3;
    double prev = model::potential_derivs(0.0, p).second;
    if (prev >= 0.0) return std::nullopt;  // no concave barrier region
    for (double x = step; x <= 8.0; x += step) {
        const double cur = model::potential_derivs(x, p).second;
        if (cur >= 0.0) {
            double lo = x - step, hi = x;
            for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (model::potential_derivs(mid, p).second < 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = cur;
    }
    return std::nullopt;
}

double beta_fold_threshold(const EngineParams& p) {
    // V''(0) = m w^2 - 2 beta / L^2 turns negative first at x = 0
    double wmax = 0.0;
    const double l2 = p.barrier_width * p.barrier_width;
    for (double x = 0.0; x <= 8.0; x += 1e-3) {
        const double w =
            std::exp(-x * x / l2) * (2.0 / l2 - 4.0 * x * x / (l2 * l2));
        wmax = std::max(wmax, w);
    }
    return p.mass * p.omega_m * p.omega_m / wmax;
}

BoundaryCurves operational_boundary(const EngineParams& p,
                                    const std::vector<double>& g_grid,
                                    double beta_max) {
    BoundaryCurves curves;
    const double beta_fold = beta_fold_threshold(p);
    for (const double g : g_grid) {
        EngineParams pg = p;
        pg.g_kappa = g;
        bool any = false;
        for (const int family : {+1, -1}) {
            auto gfun = [&](double beta) -> std::optional<double> {
                EngineParams pb = pg;
                pb.beta = beta;
                const auto xp = positive_inflection(pb);
                if (!xp) return std::nullopt;
                const double xs = family > 0 ? *xp : -*xp;
                return p.hbar * pb.g_omega * model::n_eff(xs, pb) +
                       model::potential_derivs(xs, pb).first;
            };
            const double b0 = beta_fold * (1.0 + 1e-6) + 1e-9;
            const double db = 2e-3;
            std::optional<double> prev = gfun(b0);
            for (double b = b0 + db; b <= beta_max; b += db) {
                const std::optional<double> cur = gfun(b);
                if (prev && cur && ((*prev <= 0.0) != (*cur <= 0.0))) {
                    double lo = b - db, hi = b;
                    double flo = *prev;
                    while (hi - lo > 1e-8) {
                        const double mid = 0.5 * (lo + hi);
                        const double fm = *gfun(mid);
                        if ((flo <= 0.0) == (fm <= 0.0)) {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                        }
                    }
                    curves.points.push_back({g, 0.5 * (lo + hi), family});
                    any = true;
                }
                prev = cur;
            }
        }
        if (!any) curves.gaps.push_back(g);
    }
    return curves;
}

}  // namespace ohe::classical
