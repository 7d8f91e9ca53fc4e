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

#include "ohe/linalg/matrix.hpp"

namespace ohe::la {

// Eigendecomposition A = V diag(vals) V^dagger of a Hermitian matrix,
// eigenvalues ascending, eigenvectors in the columns of V.
struct EigH {
    std::vector<double> vals;
    CMat vecs;
};

// Cyclic complex Jacobi. Input must be Hermitian within `herm_tol`
// (checked); throws std::invalid_argument otherwise.
EigH eig_hermitian(const CMat& a, double herm_tol = 1e-10);

// Smallest eigenvalue of a Hermitian matrix by Cholesky bisection:
// A - s I is positive definite iff s < lambda_min. Cheap enough to run
// as a routine positivity audit on density matrices.
double min_eig_hermitian(const CMat& a, double abs_tol = 1e-9);

}  // namespace ohe::la
