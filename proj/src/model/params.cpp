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

#include "ohe/model/params.hpp"

#include <cmath>

namespace ohe::model {

void EngineParams::validate() const {
    auto bad = [](const std::string& what) {
        throw ConfigError("engine parameters: " + what);
    };
    if (!(kappa0 > 0.0)) bad("kappa0 must be positive");
    if (!(gamma > 0.0)) bad("gamma must be positive");
    if (!(barrier_width > 0.0)) bad("barrier_width must be positive");
    if (beta < 0.0) bad("beta must be nonnegative");
    if (n_hot < 0.0 || n_cold < 0.0 || n_th < 0.0)
        bad("occupation numbers must be nonnegative");
    if (!(mass > 0.0)) bad("mass must be positive");
    if (!(omega_m > 0.0)) bad("omega_m must be positive");
    if (!(hbar > 0.0)) bad("hbar must be positive");
}

double EngineParams::x_zpf() const {
    return std::sqrt(hbar / (2.0 * mass * omega_m));
}

bool UnitSystem::holds(const EngineParams& p, double tol) {
    return std::abs(p.hbar - 1.0) <= tol && std::abs(p.omega_m - 1.0) <= tol &&
           std::abs(p.x_zpf() - 1.0) <= tol;
}

double potential(double x, const EngineParams& p) {
    const double l2 = p.barrier_width * p.barrier_width;
    return 0.5 * p.mass * p.omega_m * p.omega_m * x * x + p.theta * x +
           p.beta * std::exp(-x * x / l2);
}

PotentialDerivs potential_derivs(double x, const EngineParams& p) {
    const double l2 = p.barrier_width * p.barrier_width;
    const double g = p.beta * std::exp(-x * x / l2);
    const double mw2 = p.mass * p.omega_m * p.omega_m;
    PotentialDerivs d;
    d.first = mw2 * x + p.theta - 2.0 * x / l2 * g;
    d.second = mw2 + g * (4.0 * x * x / (l2 * l2) - 2.0 / l2);
    return d;
}

Rates rates(double x, const EngineParams& p) {
    // Large |g_kappa x| saturates cleanly: exp overflow gives inf and the
    // division returns 0, which is the correct limit.
    Rates r;
    r.hot = p.kappa0 / (1.0 + std::exp(p.g_kappa * x));
    r.cold = p.kappa0 / (1.0 + std::exp(-p.g_kappa * x));
    return r;
}

double n_eff(double x, const EngineParams& p) {
    const Rates r = rates(x, p);
    return (r.hot * p.n_hot + r.cold * p.n_cold) / p.kappa0;
}

}  // namespace ohe::model
