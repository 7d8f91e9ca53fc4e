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

#include "ohe/hilbert/hilbert.hpp"

namespace ohe::quantum {

using hilbert::HilbertDims;
using la::CMat;
using la::cplx;

// Hermitian unit-trace state on the joint space, with its truncation
// recorded. Positivity breaches are reported by audit(), never clipped.
struct DensityMatrix {
    HilbertDims dims;
    CMat rho;

    std::size_t dim() const { return rho.rows(); }

    struct Audit {
        double trace_error = 0.0;
        double herm_defect = 0.0;
        double min_eig = 0.0;
        bool positive(double pos_tol = 1e-6) const {
            return min_eig >= -pos_tol;
        }
    };
    Audit audit() const;

    // enforce exact Hermiticity + unit trace (roundoff cleanup only)
    void hermitize_and_normalize();
};

DensityMatrix maximally_mixed(const HilbertDims& dims);

// Truncated thermal cavity state (geometric distribution renormalized on
// n levels) and oscillator basis states; building blocks for tests and
// the decoupled sanity configurations.
CMat thermal_state(std::size_t levels, double nbar);
CMat fock_state(std::size_t levels, std::size_t n);
CMat coherent_state(std::size_t levels, cplx alpha);

// Partial traces. Trace is preserved exactly.
CMat reduced_cavity(const DensityMatrix& rho);
CMat reduced_molecule(const DensityMatrix& rho);

// g2(0) = <adag adag a a> / <adag a>^2 on a cavity-factor state.
// Throws NumericalError("vacuum") when <n> <= 1e-12.
double g2(const CMat& rho_cav);

double purity(const CMat& rho);
double trace_distance(const CMat& a, const CMat& b);
// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
double fidelity(const CMat& rho, const CMat& sigma);

}  // namespace ohe::quantum
