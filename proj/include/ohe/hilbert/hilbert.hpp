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

#include <functional>

#include "ohe/errors.hpp"
#include "ohe/linalg/sparse.hpp"

// Operator algebra on a truncated cavity (x) molecule product space.
//
// Conventions, fixed project-wide:
//  * tensor products put the cavity factor on the slow index,
//    i.e. joint index = cav * n_mol + mol;
//  * density matrices vectorize by column stacking,
//    vec(rho)[j * d + i] = rho(i, j), so vec(A rho B) = (B^T (x) A) vec(rho).
//
// Operators and superoperators are immutable once built and may be shared
// freely across threads; construction itself is single-threaded.

namespace ohe::hilbert {

using la::cplx;
using la::CMat;
using la::CSR;
using la::cvec;

struct HilbertDims {
    std::size_t n_cav = 0;  // cavity Fock levels
    std::size_t n_mol = 0;  // molecular oscillator-basis levels

    std::size_t joint() const { return n_cav * n_mol; }
    bool valid() const { return n_cav >= 2 && n_mol >= 2; }
    bool operator==(const HilbertDims&) const = default;
};

struct Operator {
    CSR mat;
    HilbertDims dims;        // set for joint-space operators, {0,0} otherwise
    bool hermitian = false;  // only set after verification

    std::size_t dim() const { return mat.rows; }
    CMat dense() const { return la::csr_to_dense(mat); }

    // Verifies ||O - O^dagger||_max <= tol before setting the flag.
    void mark_hermitian(double tol = 1e-12);
};

struct SuperOperator {
    CSR mat;  // acts on column-stacked density matrices
    HilbertDims dims;

    std::size_t dim() const { return mat.rows; }
    cvec apply(const cvec& v) const { return la::spmv(mat, v); }
};

// Boson annihilation operator on n levels: entries sqrt(k) at (k-1, k).
Operator ladder(std::size_t n);

Operator identity_op(std::size_t n);
Operator from_dense(const CMat& m, double drop_tol = 0.0);

// Kronecker product A (x) B, cavity factor slow. Records dims.
Operator tensor(const Operator& cav, const Operator& mol);

// Spectral calculus f(O) for Hermitian O via dense eigendecomposition,
// re-sparsified with drop tolerance 1e-14.
Operator operator_function(const Operator& o,
                           const std::function<double(double)>& f);

// Lindblad dissipator D[L] in vectorized form:
//   conj(L) (x) L - 1/2 [ I (x) L^dag L + (L^dag L)^T (x) I ].
SuperOperator dissipator(const Operator& l);

// Superoperators for left/right multiplication: spre(A) rho = A rho,
// spost(B) rho = rho B.
SuperOperator spre(const Operator& a);
SuperOperator spost(const Operator& b);

cvec vectorize(const CMat& rho);
CMat devectorize(const cvec& v);

// max_rho |Tr(S vec(rho))| probe used by the trace-annihilation tests
double trace_of_applied(const SuperOperator& s, const CMat& rho);

}  // namespace ohe::hilbert
