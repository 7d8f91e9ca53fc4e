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

#include <vector>

#include "ohe/model/params.hpp"

// Overdamped mean-field dynamics of the engine:
//   dn_a/dt = -kappa0 (n_a - n_eff(x))
//   dx/dt   = -(1/(m gamma)) (V'(x) + hbar g_omega n_a)

namespace ohe::classical {

using model::EngineParams;

struct ClassicalState {
    double n_a = 0.0;
    double x = 0.0;
};

struct Deriv {
    double dn = 0.0;
    double dx = 0.0;
};

Deriv rhs(const ClassicalState& s, const EngineParams& p);

struct ClassicalTrajectory {
    std::vector<double> t;
    std::vector<double> n_a;
    std::vector<double> x;
    double dt = 0.0;  // integrator step (samples may be thinned)
    EngineParams params;

    std::size_t size() const { return t.size(); }
    ClassicalState state(std::size_t i) const { return {n_a[i], x[i]}; }
};

// Fixed-step classical RK4. Samples are stored every `store_every` steps
// (the final state is always stored). Throws NumericalError on blowup.
// `settle_tol` > 0 stops early once |rhs| falls below it.
ClassicalTrajectory simulate(ClassicalState s0, const EngineParams& p,
                             double t_max, double dt,
                             std::size_t store_every = 1,
                             double settle_tol = 0.0);

// Adaptive Dormand-Prince 5(4); used as the cross-check oracle for the
// fixed-step integrator and the cycle quadrature.
ClassicalTrajectory simulate_adaptive(ClassicalState s0, const EngineParams& p,
                                      double t_max, double rtol = 1e-9,
                                      double atol = 1e-11);

}  // namespace ohe::classical
