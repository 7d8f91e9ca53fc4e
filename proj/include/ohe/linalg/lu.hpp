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

// Dense LU with partial pivoting, row-major Doolittle. Near-singular
// factors are permitted (min_pivot reports how close); the inverse
// iteration in the steady-state solver relies on that.
struct DenseLU {
    CMat lu;
    std::vector<std::size_t> piv;  // piv[k] = row swapped into position k
    double min_pivot = 0.0;

    std::size_t n() const { return lu.rows(); }
};

DenseLU lu_factor(CMat a);

// Solve A x = b for one right-hand side (b overwritten with x).
void lu_solve(const DenseLU& f, cplx* b);

// Solve A X = B where B is row-major n x nrhs (overwritten with X).
// Row operations map to contiguous axpys across the RHS block.
void lu_solve_block(const DenseLU& f, cplx* b, std::size_t nrhs);

}  // namespace ohe::la
