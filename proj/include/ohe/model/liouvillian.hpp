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
#include "ohe/model/params.hpp"

namespace ohe::model {

using hilbert::HilbertDims;
using hilbert::Operator;
using hilbert::SuperOperator;
using la::CMat;

// Molecular-space building blocks (dense n_mol x n_mol):
//   x = x0 (b + b^dag), p = i hbar/(2 x0) (b^dag - b),
//   h_mol = p^2/2m + V(x) with V applied through the spectral calculus,
//   k_h/k_c = sqrt(kappa_{h,c}(x)).
struct MolecularOps {
    std::size_t n_mol = 0;
    CMat x, p, h_mol, k_hot, k_cold;
};

MolecularOps build_molecular_ops(const EngineParams& p, std::size_t n_mol);

// Full joint Hamiltonian: hbar (omega_a + g_omega x) a^dag a + p^2/2m + V(x).
Operator build_hamiltonian(const EngineParams& p, const HilbertDims& dims);

// The cavity part hbar (omega_a + g_omega x) a^dag a alone.
Operator build_h_a_eff(const EngineParams& p, const HilbertDims& dims);

// Vectorized generator of the master equation plus its separately
// addressable pieces. `full` = ham + hot + cold + brownian.
struct LiouvillianParts {
    HilbertDims dims;
    SuperOperator full;
    SuperOperator ham;       // -(i/hbar)[H, .]
    SuperOperator hot;       // hot-reservoir dissipator (thermal pair)
    SuperOperator cold;      // cold-reservoir dissipator
    SuperOperator brownian;  // Caldeira-Leggett term
    Operator h_total;
    Operator h_a_eff;
};

// Throws NumericalError when the assembled superoperator would exceed
// `max_nnz` stored entries; larger systems should use the ladder solver.
LiouvillianParts build_liouvillian(const EngineParams& p,
                                   const HilbertDims& dims,
                                   std::size_t max_nnz = 60'000'000);

}  // namespace ohe::model
