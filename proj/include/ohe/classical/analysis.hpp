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

#pragma once

#include <complex>
#include <optional>
#include <string>

#include "ohe/classical/dynamics.hpp"

namespace ohe::classical {

enum class Regime { fixed_point, limit_cycle, bistable, undetermined };
const char* regime_name(Regime r);

struct FixedPoint {
    double x = 0.0;
    double n = 0.0;  // slaved photon number n_eff(x)
    double jac[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    std::complex<double> eig[2];
    enum class Kind { stable, unstable, saddle } kind = Kind::stable;
    double residual = 0.0;  // |hbar g_omega n_eff(x) + V'(x)|
};

struct StabilityReport {
    std::vector<FixedPoint> points;
    std::size_t stable_count() const;
};

// Dense sign-change scan of hbar g_omega n_eff(x) + V'(x) on [x_lo, x_hi],
// bisection + Newton refinement to 1e-10, Jacobian classification.
StabilityReport find_fixed_points(const EngineParams& p, double x_lo = -8.0,
                                  double x_hi = 8.0, double step = 1e-3);

struct CycleMetrics {
    Regime regime = Regime::undetermined;
    double period = 0.0;
    double avg_power = 0.0;
    double work = 0.0;
    double period_spread = 0.0;    // relative spread of the last 5 intervals
    double energy_loop_term = 0.0; // |dE residual| / T over the closed loop
    std::vector<double> loop_t, loop_n, loop_x;  // one detected cycle
    std::string note;
};

struct ClassifyOptions {
    // Probe box corners; n_hi < 0 means "use n_hot".
    double n_lo = 0.0;
    double n_hi = -1.0;
    double x_lo = -3.0;
    double x_hi = 3.0;
    double t_max = 2000.0;
    double dt = 1e-3;
    std::size_t store_every = 10;
    double period_spread_tol = 1e-3;
};

// Deterministic probe set: the 4 corners of the configured box plus every
// stable fixed point offset by +1e-3 in both coordinates. A limit cycle is
// reported when some probe settles into mean-upcrossings with stationary
// intervals and no probe rests at a point attractor; distinct point
// attractors (counting a coexisting cycle as one) give `bistable`.
CycleMetrics classify_regime(const EngineParams& p,
                             const ClassifyOptions& opt = {});

// Internal cycle detector, exposed for tests: upward crossings of the
// windowed mean of x(t) with linear interpolation; requires the last 5
// intervals to agree within spread_tol.
struct CycleDetection {
    bool found = false;
    double period = 0.0;
    double spread = 0.0;
    std::vector<double> crossings;
};
CycleDetection detect_cycle(const ClassicalTrajectory& traj, double t_start,
                            double spread_tol = 1e-3);

// Cycle-average of the radiation-pressure power -hbar g_omega n_a dx/dt
// over the last full detected cycle (trapezoid in x, so a reversed loop
// flips the sign). Throws NumericalError when no cycle is present.
CycleMetrics cycle_power(const ClassicalTrajectory& traj,
                         const EngineParams& p);

// Positive inflection point of V (V'' = 0); V'' is even so the partner is
// its negative. Empty when beta is below the fold threshold.
std::optional<double> positive_inflection(const EngineParams& p);

// Smallest beta for which inflection points exist, scanned numerically.
double beta_fold_threshold(const EngineParams& p);

struct BoundaryPoint {
    double g_kappa = 0.0;
    double beta = 0.0;
    int family = +1;  // +1: condition at x_plus, -1: at x_minus
};

struct BoundaryCurves {
    std::vector<BoundaryPoint> points;
    std::vector<double> gaps;  // g_kappa values with no boundary root
};

// Solves hbar g_omega n_eff(x_pm(beta)) + V'(x_pm(beta)) = 0 for beta at
// each g_kappa (nested root solve, outer tolerance 1e-8).
BoundaryCurves operational_boundary(const EngineParams& p,
                                    const std::vector<double>& g_grid,
                                    double beta_max = 6.0);

}  // namespace ohe::classical
