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

#include "ohe/quantum/steady.hpp"

namespace ohe::quantum {

struct HeatCurrents {
    double hot = 0.0;
    double cold = 0.0;
};

// Tr[H_a_eff L_{h,c} rho] evaluated blockwise from the matrix form.
// Imaginary residues above 1e-8 raise a numerical-inconsistency error;
// below that they are checked against 1e-10 and discarded.
HeatCurrents heat_currents(const EngineSystem& s, const CMat& rho);

// Same contraction through the explicitly assembled superoperator parts;
// the two routes are equivalence-tested against each other.
HeatCurrents heat_currents(const model::LiouvillianParts& parts,
                           const CMat& rho);

struct ThermoReport {
    double q_hot = 0.0;
    double q_cold = 0.0;
    double p_eq7 = 0.0;    // q_hot + q_cold (exact sum)
    double p_np = 0.0;     // -(hbar g_omega / m) <n_a p>
    double dp_corr = 0.0;  // -(hbar g_omega / m) (<n_a p> - <n_a><p>)
    double n_a = 0.0;
    double p_mean = 0.0;
    double g2 = 0.0;
    bool g2_defined = true;
};

// All steady-state thermodynamic observables. <n_a p> is the symmetrized
// mixed moment; the factors live on different tensor slots and commute,
// so the symmetrization is exact.
ThermoReport thermo_report(const EngineSystem& s, const DensityMatrix& rho);

double expect_photon_number(const EngineSystem& s, const CMat& rho);
double expect_momentum(const EngineSystem& s, const CMat& rho);
double expect_photon_momentum(const EngineSystem& s, const CMat& rho);

struct ConvergenceRow {
    HilbertDims dims;
    double n_a = 0.0;
    double p_eq7 = 0.0;
    double g2 = 0.0;
    double delta = 0.0;  // max relative change vs previous row
};

struct ConvergenceReport {
    HilbertDims dims;  // converged truncation
    std::vector<ConvergenceRow> table;
    bool converged = false;
};

// Alternately grow n_cav / n_mol by 25% until <n_a>, P and g2 move by
// less than rtol between refinements. Aborts with a budget error once the
// projected ladder workspace exceeds mem_budget_bytes, reporting the best
// truncation so far inside the exception message.
ConvergenceReport converge_dims(const EngineParams& p, HilbertDims start,
                                double rtol = 1e-3,
                                std::size_t mem_budget_bytes =
                                    3ull * 1024 * 1024 * 1024);

}  // namespace ohe::quantum
