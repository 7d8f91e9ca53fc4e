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

#include "ohe/normalmodes/normalmodes.hpp"

#include <cmath>

namespace ohe::normalmodes {

void TwoModeParams::validate() const {
    if (!(g > 0.0))
        throw ConfigError("two-mode parameters: g must be positive");
    if (!(omega_a_bare < omega_b_bare))
        throw ConfigError("two-mode parameters: need omega_A < omega_B");
    if (kappa_a < 0.0 || kappa_b < 0.0 || n_a < 0.0 || n_b < 0.0)
        throw ConfigError("two-mode parameters: rates/occupations >= 0");
}

namespace {

double delta_of(double x, const TwoModeParams& p) {
    return p.omega_a_bare - p.omega_b_bare + (p.g_a - p.g_b) * x;
}

// Omega +- Delta without cancellation: the small combination is rewritten
// through g^2 / (Omega +- |Delta|).
void stable_sums(double delta, double g, double& omega, double& plus,
                 double& minus) {
    omega = std::hypot(delta, g);
    if (delta >= 0.0) {
        plus = omega + delta;
        minus = g * g / plus;
    } else {
        minus = omega - delta;
        plus = g * g / minus;
    }
}

}  // namespace

std::pair<double, double> normal_frequencies(double x,
                                             const TwoModeParams& p) {
    const double sum =
        p.omega_a_bare + p.omega_b_bare + (p.g_a + p.g_b) * x;
    const double omega = std::hypot(delta_of(x, p), p.g);
    return {0.5 * (sum + omega), 0.5 * (sum - omega)};
}

NormalModeSample bogoliubov(double x, const TwoModeParams& p) {
    p.validate();
    NormalModeSample s;
    s.x = x;
    s.delta = delta_of(x, p);
    double plus = 0.0, minus = 0.0;
    stable_sums(s.delta, p.g, s.omega_gap, plus, minus);
    const auto [wa, wb] = normal_frequencies(x, p);
    s.omega_a = wa;
    s.omega_b = wb;
    const double np = std::sqrt(2.0 * s.omega_gap * plus);
    const double nm = std::sqrt(2.0 * s.omega_gap * minus);
    s.u[0][0] = -p.g / np;
    s.u[0][1] = plus / np;
    s.u[1][0] = p.g / nm;
    s.u[1][1] = minus / nm;
    s.kappa_h = p.kappa_a * s.u[0][0] * s.u[0][0];
    s.kappa_c = p.kappa_b * s.u[0][1] * s.u[0][1];
    return s;
}

ExactRates exact_rates(double x, const TwoModeParams& p) {
    const NormalModeSample s = bogoliubov(x, p);
    return {s.kappa_h, s.kappa_c};
}

LogisticFit fit_logistic(const std::vector<double>& x,
                         const std::vector<double>& kappa, double kappa0) {
    if (x.size() != kappa.size() || x.size() < 2)
        throw ConfigError("fit_logistic: degenerate sample set");
    // ln(kappa0 / kappa - 1) = g (x - center): plain linear least squares
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ratio =
            std::max(kappa0 / std::max(kappa[i], 1e-300) - 1.0, 1e-300);
        const double y = std::log(ratio);
        sx += x[i];
        sy += y;
        sxx += x[i] * x[i];
        sxy += x[i] * y;
    }
    const double n = static_cast<double>(x.size());
    LogisticFit f;
    f.g_kappa = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - f.g_kappa * sx) / n;
    f.center = f.g_kappa != 0.0 ? -intercept / f.g_kappa : 0.0;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit =
            kappa0 / (1.0 + std::exp(f.g_kappa * (x[i] - f.center)));
        const double rel =
            std::abs(fit - kappa[i]) / std::max(kappa[i], 1e-300);
        f.max_rel = std::max(f.max_rel, rel);
        rss += rel * rel;
    }
    f.rms_rel = std::sqrt(rss / n);
    return f;
}

FitReport fit_effective_params(const TwoModeParams& p, double x_lo,
                               double x_hi, std::size_t n_samples) {
    p.validate();
    if (!(x_hi > x_lo) || n_samples < 2)
        throw ConfigError("fit_effective_params: degenerate window");
    FitReport rep;
    rep.samples = n_samples;
    rep.kappa0 = 0.5 * (p.kappa_a + p.kappa_b);

    std::vector<double> xs(n_samples), kh(n_samples), wa(n_samples);
    double wx = 0.0, wy = 0.0, wxx = 0.0, wxy = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                                    static_cast<double>(n_samples - 1);
        const NormalModeSample s = bogoliubov(x, p);
        xs[i] = x;
        kh[i] = s.kappa_h;
        wa[i] = s.omega_a;
        wx += x;
        wy += s.omega_a;
        wxx += x * x;
        wxy += x * s.omega_a;
    }
    const LogisticFit lf = fit_logistic(xs, kh, rep.kappa0);
    rep.g_kappa = lf.g_kappa;
    rep.center = lf.center;
    rep.logistic_max_rel = lf.max_rel;
    rep.logistic_rms_rel = lf.rms_rel;

    const double n = static_cast<double>(n_samples);
    rep.g_omega = (n * wxy - wx * wy) / (n * wxx - wx * wx);
    rep.omega_a0 = (wy - rep.g_omega * wx) / n;
    double lss = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double lfit = rep.omega_a0 + rep.g_omega * xs[i];
        const double lrel = std::abs(lfit - wa[i]) / std::abs(wa[i]);
        rep.linear_max_rel = std::max(rep.linear_max_rel, lrel);
        lss += lrel * lrel;
    }
    rep.linear_rms_rel = std::sqrt(lss / n);
    return rep;
}

}  // namespace ohe::normalmodes
