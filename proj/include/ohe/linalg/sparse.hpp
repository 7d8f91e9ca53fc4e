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

#include <cstdint>

#include "ohe/linalg/matrix.hpp"

namespace ohe::la {

// Compressed sparse row, complex, with sorted column indices per row.
struct CSR {
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> row_ptr;  // size rows + 1
    std::vector<std::int32_t> col;
    std::vector<cplx> val;

    std::size_t nnz() const { return val.size(); }
};

// Triplet accumulator; duplicates are summed on compress().
class CooBuilder {
  public:
    CooBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
    void add(std::size_t i, std::size_t j, cplx v) {
        if (v.real() != 0.0 || v.imag() != 0.0)
            trips_.push_back({i, j, v});
    }
    // drop_tol: entries with |v| <= drop_tol after summation are discarded
    CSR compress(double drop_tol = 0.0) const;

  private:
    struct Trip {
        std::size_t i, j;
        cplx v;
    };
    std::size_t rows_, cols_;
    std::vector<Trip> trips_;
};

CSR csr_identity(std::size_t n);
CSR csr_from_dense(const CMat& a, double drop_tol = 0.0);
CMat csr_to_dense(const CSR& a);
CSR csr_transpose(const CSR& a);
CSR csr_adjoint(const CSR& a);
CSR csr_conjugate(const CSR& a);

// c = a + alpha*b
CSR csr_add(const CSR& a, const CSR& b, cplx alpha = {1.0, 0.0});
CSR csr_scale(CSR a, cplx alpha);
// c = a * b (sparse-sparse product, row merge)
CSR csr_matmul(const CSR& a, const CSR& b);
// Kronecker product with the left factor as the slow index.
CSR csr_kron(const CSR& a, const CSR& b);

// y = a * x through the kernel backend
void spmv(const CSR& a, const cplx* x, cplx* y);
cvec spmv(const CSR& a, const cvec& x);

double csr_max_abs(const CSR& a);

// Compressed sparse column view used by the sparse LU.
struct CSC {
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> col_ptr;
    std::vector<std::int32_t> row;
    std::vector<cplx> val;
};

CSC csr_to_csc(const CSR& a);

}  // namespace ohe::la
