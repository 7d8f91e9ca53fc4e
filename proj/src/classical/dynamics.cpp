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

#include "ohe/classical/dynamics.hpp"

#include <cmath>
#include <string>

namespace ohe::classical {

Deriv rhs(const ClassicalState& s, const EngineParams& p) {
    Deriv d;
    d.dn = -p.kappa0 * (s.n_a - model::n_eff(s.x, p));
    d.dx = -(model::potential_derivs(s.x, p).first +
             p.hbar * p.g_omega * s.n_a) /
           (p.mass * p.gamma);
    return d;
}

namespace {

void check_finite(const ClassicalState& s, double t) {
    if (!std::isfinite(s.n_a) || !std::isfinite(s.x))
        throw NumericalError(
            "classical integration blew up at t = " + std::to_string(t) +
            " (n_a = " + std::to_string(s.n_a) +
            ", x = " + std::to_string(s.x) + ")");
}

}  // namespace

ClassicalTrajectory simulate(ClassicalState s0, const EngineParams& p,
                             double t_max, double dt, std::size_t store_every,
                             double settle_tol) {
    if (!(dt > 0.0) || !(t_max > dt))
        throw ConfigError("simulate: need dt > 0 and t_max > dt");
    if (store_every == 0) store_every = 1;
    const auto n_steps = static_cast<std::size_t>(std::ceil(t_max / dt));

    ClassicalTrajectory traj;
    traj.dt = dt;
    traj.params = p;
    traj.t.reserve(n_steps / store_every + 2);
    traj.n_a.reserve(n_steps / store_every + 2);
    traj.x.reserve(n_steps / store_every + 2);

    ClassicalState s = s0;
    double t = 0.0;
    auto push = [&](double tt, const ClassicalState& ss) {
        traj.t.push_back(tt);
        traj.n_a.push_back(ss.n_a);
        traj.x.push_back(ss.x);
    };
    push(t, s);
    for (std::size_t step = 0; step < n_steps; ++step) {
        const Deriv k1 = rhs(s, p);
        const Deriv k2 =
            rhs({s.n_a + 0.5 * dt * k1.dn, s.x + 0.5 * dt * k1.dx}, p);
        const Deriv k3 =
            rhs({s.n_a + 0.5 * dt * k2.dn, s.x + 0.5 * dt * k2.dx}, p);
        const Deriv k4 = rhs({s.n_a + dt * k3.dn, s.x + dt * k3.dx}, p);
        s.n_a += dt / 6.0 * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn);
        s.x += dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
        t += dt;
        check_finite(s, t);
        if ((step + 1) % store_every == 0 || step + 1 == n_steps) push(t, s);
        if (settle_tol > 0.0 && (step % 4096) == 0) {
            const Deriv d = rhs(s, p);
            if (std::abs(d.dn) < settle_tol && std::abs(d.dx) < settle_tol)
                break;
        }
    }
    return traj;
}

ClassicalTrajectory simulate_adaptive(ClassicalState s0, const EngineParams& p,
                                      double t_max, double rtol, double atol) {
    // Dormand-Prince RK5(4)7M (autonomous system: no c nodes needed)
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                        e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

    ClassicalTrajectory traj;
    traj.params = p;
    ClassicalState s = s0;
    double t = 0.0;
    double h = 1e-4;
    traj.t.push_back(0.0);
    traj.n_a.push_back(s.n_a);
    traj.x.push_back(s.x);

    Deriv k1 = rhs(s, p);
    std::size_t rejected_in_row = 0;
    while (t < t_max) {
        h = std::min(h, t_max - t);
        auto adv = [&](double fn, double fx) {
            return ClassicalState{s.n_a + h * fn, s.x + h * fx};
        };
        const Deriv k2 = rhs(adv(a21 * k1.dn, a21 * k1.dx), p);
        const Deriv k3 = rhs(adv(a31 * k1.dn + a32 * k2.dn,
                                 a31 * k1.dx + a32 * k2.dx),
                             p);
        const Deriv k4 =
            rhs(adv(a41 * k1.dn + a42 * k2.dn + a43 * k3.dn,
                    a41 * k1.dx + a42 * k2.dx + a43 * k3.dx),
                p);
        const Deriv k5 =
            rhs(adv(a51 * k1.dn + a52 * k2.dn + a53 * k3.dn + a54 * k4.dn,
                    a51 * k1.dx + a52 * k2.dx + a53 * k3.dx + a54 * k4.dx),
                p);
        const Deriv k6 = rhs(adv(a61 * k1.dn + a62 * k2.dn + a63 * k3.dn +
                                     a64 * k4.dn + a65 * k5.dn,
                                 a61 * k1.dx + a62 * k2.dx + a63 * k3.dx +
                                     a64 * k4.dx + a65 * k5.dx),
                             p);
        const double dn5 =
            b1 * k1.dn + b3 * k3.dn + b4 * k4.dn + b5 * k5.dn + b6 * k6.dn;
        const double dx5 =
            b1 * k1.dx + b3 * k3.dx + b4 * k4.dx + b5 * k5.dx + b6 * k6.dx;
        const ClassicalState snew{s.n_a + h * dn5, s.x + h * dx5};
        const Deriv k7 = rhs(snew, p);
        const double errn = h * (e1 * k1.dn + e3 * k3.dn + e4 * k4.dn +
                                 e5 * k5.dn + e6 * k6.dn + e7 * k7.dn);
        const double errx = h * (e1 * k1.dx + e3 * k3.dx + e4 * k4.dx +
                                 e5 * k5.dx + e6 * k6.dx + e7 * k7.dx);
        const double scn = atol + rtol * std::max(std::abs(s.n_a),
                                                  std::abs(snew.n_a));
        const double scx =
            atol + rtol * std::max(std::abs(s.x), std::abs(snew.x));
        const double err = std::sqrt(0.5 * ((errn / scn) * (errn / scn) +
                                            (errx / scx) * (errx / scx)));
        if (err <= 1.0) {
            t += h;
            s = snew;
            k1 = k7;  // FSAL
            check_finite(s, t);
            traj.t.push_back(t);
            traj.n_a.push_back(s.n_a);
            traj.x.push_back(s.x);
            rejected_in_row = 0;
        } else if (++rejected_in_row > 64) {
            throw NumericalError("simulate_adaptive: step control failed");
        }
        const double fac =
            std::clamp(0.9 * std::pow(err > 0 ? err : 1e-10, -0.2), 0.2, 5.0);
        h *= fac;
        if (h < 1e-14)
            throw NumericalError("simulate_adaptive: step underflow");
    }
    return traj;
}

}  // namespace ohe::classical
