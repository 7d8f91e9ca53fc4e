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

#include "ohe/model/liouvillian.hpp"
#include "ohe/quantum/density.hpp"

namespace ohe::quantum {

using model::EngineParams;
using model::LiouvillianParts;
using hilbert::SuperOperator;
using la::cvec;

// Matrix-form engine at fixed truncation: the molecular operators plus
// the cavity ladder structure, without ever materializing the joint
// superoperator. Every generator term acts blockwise on the cavity
// indices with dense n_mol x n_mol products.
struct EngineSystem {
    EngineParams params;
    HilbertDims dims;
    model::MolecularOps mol;
    CMat k_hot2, k_cold2;  // squared jump prefactors

    // molecular Hamiltonian seen at cavity level n
    CMat h_level(std::size_t n) const;
};

EngineSystem make_engine_system(const EngineParams& p,
                                const HilbertDims& dims);

// Blockwise applications of the generator and its parts to a joint state.
CMat apply_full(const EngineSystem& s, const CMat& rho);
CMat apply_hamiltonian(const EngineSystem& s, const CMat& rho);
CMat apply_hot(const EngineSystem& s, const CMat& rho);
CMat apply_cold(const EngineSystem& s, const CMat& rho);
CMat apply_brownian(const EngineSystem& s, const CMat& rho);

struct SteadyStateResult {
    DensityMatrix rho;
    double residual = 0.0;      // ||L vec(rho)|| / max|L|
    double residual_raw = 0.0;  // ||L vec(rho)||_2
    std::string method;
    double min_eig = 0.0;       // positivity audit
    bool positivity_ok = true;
};

// Steady state of an explicitly assembled Liouvillian: sparse direct solve
// with the first diagonal row replaced by the vectorized trace functional
// (rhs 1), Hermitized and renormalized. Falls back to shifted inverse
// iteration when the trace-replaced factorization is unusable, and raises
// a multiplicity error when the null space is degenerate.
SteadyStateResult steady_state(const SuperOperator& liouvillian,
                               double pos_tol = 1e-6);

// Steady state through the photon-number-difference reduction: the
// generator preserves k = n - n', the steady state lives in k = 0, and
// that sector is block-tridiagonal over the cavity ladder. Factored by
// block-Thomas elimination with dense partially-pivoted blocks plus a
// tiny-shift inverse iteration. Cross-validated against steady_state()
// in the test suite; this is the path for production truncations.
SteadyStateResult steady_state_ladder(const EngineSystem& s,
                                      double pos_tol = 1e-6,
                                      bool audit_positivity = true);

// Adaptive explicit propagation of the vectorized state (Dormand-Prince
// 5(4), relative tolerance 1e-8, absolute 1e-10 by default).
DensityMatrix evolve(const DensityMatrix& rho0, const SuperOperator& l,
                     double t, double rtol = 1e-8, double atol = 1e-10);

}  // namespace ohe::quantum
