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

#include <string>

#include "ohe/errors.hpp"

namespace ohe::model {

// Every physical constant of the engine in dimensionless units
// (hbar = omega_m = x0 = 1, hence mass = 1/2). Single source of truth;
// the defaults are the reference parameter set used throughout.
struct EngineParams {
    double omega_m = 1.0;        // molecular frequency (unit)
    double mass = 0.5;           // effective mass
    double theta = 1.0;          // potential tilt
    double beta = 2.0;           // barrier height
    double barrier_width = 1.0;  // L
    double g_omega = -1.0;       // dispersive coupling
    double g_kappa = 4.0;        // dissipative coupling
    double kappa0 = 0.05;        // maximum cavity decay
    double n_hot = 4.0;          // hot reservoir occupation
    double n_cold = 0.0;         // cold reservoir occupation
    double gamma = 0.5;          // molecular damping
    double n_th = 0.0;           // molecular bath occupation
    double omega_a = 100.0;      // cavity base frequency
    double hbar = 1.0;

    void validate() const;
    // zero-point length sqrt(hbar / (2 m omega_m)); 1 under the convention
    double x_zpf() const;
};

// Marker for the hbar = omega_m = x0 = 1 convention.
struct UnitSystem {
    static bool holds(const EngineParams& p, double tol = 1e-12);
};

// V(x) = 1/2 m w^2 x^2 + theta x + beta exp(-x^2/L^2)
double potential(double x, const EngineParams& p);

struct PotentialDerivs {
    double first;
    double second;
};
PotentialDerivs potential_derivs(double x, const EngineParams& p);

struct Rates {
    double hot;
    double cold;
};
// Logistic rates: kappa_h = kappa0 / (1 + exp(+g_kappa x)),
//                 kappa_c = kappa0 / (1 + exp(-g_kappa x)).
Rates rates(double x, const EngineParams& p);

// (kappa_h n_hot + kappa_c n_cold) / kappa0
double n_eff(double x, const EngineParams& p);

}  // namespace ohe::model
