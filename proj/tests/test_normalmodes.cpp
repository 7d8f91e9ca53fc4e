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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ohe/normalmodes/normalmodes.hpp"

using namespace ohe::normalmodes;

namespace {

TwoModeParams s4_params() { return TwoModeParams{}; }

double anticrossing_x(const TwoModeParams& p) {
    return (p.omega_b_bare - p.omega_a_bare) / (p.g_a - p.g_b);
}

}  // namespace

TEST_CASE("normal frequencies: gap, trace, determinant") {
    const TwoModeParams p = s4_params();
    const double xs = anticrossing_x(p);
    const auto [wa, wb] = normal_frequencies(xs, p);
    CHECK(wa - wb == doctest::Approx(p.g).epsilon(1e-12));

    std::mt19937_64 rng(11u);
    std::uniform_real_distribution<double> d(-30.0, 80.0);
    for (int i = 0; i < 200; ++i) {
        const double x = d(rng);
        const auto [a, b] = normal_frequencies(x, p);
        const double ma = p.omega_a_bare + p.g_a * x;
        const double mb = p.omega_b_bare + p.g_b * x;
        // roundoff scale set by the large +-Omega intermediates
        CHECK(std::abs((a + b) - (ma + mb)) <=
              1e-12 * (std::abs(ma) + std::abs(mb) + (a - b)));
        CHECK(a * b ==
              doctest::Approx(ma * mb - 0.25 * p.g * p.g).epsilon(1e-9));
        CHECK(a - b >= p.g);
    }
}

TEST_CASE("bogoliubov matrix limits and orthogonality") {
    const TwoModeParams p = s4_params();

    // decoupling at large positive detuning: the hot weight |u11|^2 -> 0
    const double far = anticrossing_x(p) + 5e4;
    CHECK(std::abs(bogoliubov(far, p).u[0][0]) < 2e-3);
    // symmetric hybridization at the anticrossing
    const auto mid = bogoliubov(anticrossing_x(p), p);
    CHECK(mid.u[0][0] * mid.u[0][0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mid.u[0][1] * mid.u[0][1] == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(23u);
    std::uniform_real_distribution<double> d(-100.0, 160.0);
    for (int i = 0; i < 1000; ++i) {
        const auto s = bogoliubov(d(rng), p);
        double worst = 0.0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const double dot =
                    s.u[r][0] * s.u[c][0] + s.u[r][1] * s.u[c][1];
                worst = std::max(worst, std::abs(dot - (r == c ? 1.0 : 0.0)));
            }
        CHECK(worst <= 1e-12);
        CHECK(s.omega_gap >= p.g);
    }
}

TEST_CASE("mode rows reconstruct the bare frequency matrix") {
    // row 1 of u is the eigenvector of the lower branch, row 2 of the
    // upper: M = u^T diag(omega_b, omega_a) u
    const TwoModeParams p = s4_params();
    for (const double x : {-40.0, -3.0, 0.0, 12.0, 47.4, 90.0}) {
        const auto s = bogoliubov(x, p);
        const double ma = p.omega_a_bare + p.g_a * x;
        const double mb = p.omega_b_bare + p.g_b * x;
        double rec[2][2] = {{0, 0}, {0, 0}};
        const double lam[2] = {s.omega_b, s.omega_a};
        for (int i = 0; i < 2; ++i)
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    rec[r][c] += lam[i] * s.u[i][r] * s.u[i][c];
        CHECK(std::abs(rec[0][0] - ma) <= 1e-10 * std::abs(ma));
        CHECK(std::abs(rec[1][1] - mb) <= 1e-10 * std::abs(mb));
        CHECK(std::abs(rec[0][1] - 0.5 * p.g) <= 1e-10);
        CHECK(std::abs(rec[1][0] - 0.5 * p.g) <= 1e-10);
    }
}

TEST_CASE("exact rates: sum rule, midpoint and monotonicity") {
    const TwoModeParams p = s4_params();
    double prev = 1e300;
    for (double x = -20.0; x <= 80.0; x += 0.5) {
        const auto r = exact_rates(x, p);
        CHECK(r.hot + r.cold ==
              doctest::Approx(p.kappa_a).epsilon(1e-14));
        CHECK(r.hot < prev);  // strictly decreasing across the window
        prev = r.hot;
    }
    const auto mid = exact_rates(anticrossing_x(p), p);
    CHECK(mid.hot == doctest::Approx(p.kappa_a / 2.0).epsilon(1e-12));
    CHECK(mid.cold == doctest::Approx(p.kappa_a / 2.0).epsilon(1e-12));
}

TEST_CASE("logistic fit recovers its own model class") {
    const double g = 2.7, center = -0.6, kappa0 = 0.05;
    std::vector<double> xs, ks;
    for (double x = -4.0; x <= 4.0; x += 0.05) {
        xs.push_back(x);
        ks.push_back(kappa0 / (1.0 + std::exp(g * (x - center))));
    }
    const LogisticFit f = fit_logistic(xs, ks, kappa0);
    CHECK(std::abs(f.g_kappa - g) < 1e-8);
    CHECK(std::abs(f.center - center) < 1e-8);
    CHECK(f.rms_rel < 1e-10);
}

TEST_CASE("effective-parameter fits at the reference two-mode point") {
    const TwoModeParams p = s4_params();
    const FitReport rep = fit_effective_params(p, -4.0, 4.0, 401);
    CHECK(rep.logistic_rms_rel <= 0.05);

    // linear omega_a slope against the analytic branch derivative at the
    // window center
    const double eps = 1e-5;
    const auto [up, dn] = std::pair{normal_frequencies(eps, p).first,
                                    normal_frequencies(-eps, p).first};
    const double analytic = (up - dn) / (2.0 * eps);
    CHECK(std::abs(rep.g_omega - analytic) <= 1e-3 * std::abs(analytic));

    CHECK_THROWS_AS((void)fit_effective_params(p, 1.0, 1.0, 100),
                    ohe::ConfigError);
}
