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

#include <cstddef>
#include <utility>
#include <vector>

#include "ohe/errors.hpp"

// Two coupled cavity modes hybridized by a molecular coordinate: normal
// frequencies, the orthogonal mode-mixing matrix, the exact x-dependent
// dissipation rates, and the fits that justify the logistic/linear
// effective model. Analysis layer only; the engine always consumes the
// fitted effective parameters.

namespace ohe::normalmodes {

struct TwoModeParams {
    double omega_a_bare = 100.0;  // plasmon-like mode A
    double omega_b_bare = 1000.0; // photon-like mode B
    double g_a = -1.0;            // optomechanical slopes (per x0)
    double g_b = -20.0;
    double g = 1.0;               // photon-plasmon coupling (the unit)
    double kappa_a = 0.05;
    double kappa_b = 0.05;
    double n_a = 4.0;             // bare occupations (hot = A)
    double n_b = 0.0;

    void validate() const;
};

struct NormalModeSample {
    double x = 0.0;
    double delta = 0.0;      // omega_A - omega_B + (g_A - g_B) x
    double omega_gap = 0.0;  // Omega = sqrt(delta^2 + g^2)
    double omega_a = 0.0;    // upper branch (omega_a - omega_b = Omega)
    double omega_b = 0.0;
    double u[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double kappa_h = 0.0;  // kappa_A |u11|^2
    double kappa_c = 0.0;  // kappa_B |u12|^2
};

// (omega_a, omega_b) = 1/2 [Sum +- Omega]
std::pair<double, double> normal_frequencies(double x, const TwoModeParams& p);

NormalModeSample bogoliubov(double x, const TwoModeParams& p);

struct ExactRates {
    double hot = 0.0;
    double cold = 0.0;
};
ExactRates exact_rates(double x, const TwoModeParams& p);

struct FitReport {
    // logistic fit kappa_h ~ kappa0 / (1 + exp(g_kappa (x - center)))
    double g_kappa = 0.0;
    double kappa0 = 0.0;
    double center = 0.0;
    double logistic_max_rel = 0.0;
    double logistic_rms_rel = 0.0;
    // linear fit omega_a(x) ~ omega_a0 + g_omega x
    double g_omega = 0.0;
    double omega_a0 = 0.0;
    double linear_max_rel = 0.0;
    double linear_rms_rel = 0.0;
    std::size_t samples = 0;
};

// Logistic fit kappa0 / (1 + exp(g (x - center))) through the log-linear
// transform; exact on inputs of its own model class.
struct LogisticFit {
    double g_kappa = 0.0;
    double center = 0.0;
    double max_rel = 0.0;
    double rms_rel = 0.0;
};
LogisticFit fit_logistic(const std::vector<double>& x,
                         const std::vector<double>& kappa, double kappa0);

// Least squares over [x_lo, x_hi]; kappa0 is pinned by the sum identity,
// the slope and a center offset are fitted through the log-linear form.
FitReport fit_effective_params(const TwoModeParams& p, double x_lo,
                               double x_hi, std::size_t n_samples = 401);

}  // namespace ohe::normalmodes
