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

#include "ohe/linalg/sparse.hpp"

namespace ohe::la {

// Left-looking sparse LU with partial pivoting (Gilbert-Peierls).
// L has an implicit unit diagonal and original row indices; U lives in
// pivot numbering with the diagonal split out. No fill-reducing ordering
// is applied: the Liouvillians this factors are block-structured by the
// photon-number difference, which already confines fill.
struct SparseLU {
    std::size_t n = 0;
    std::vector<std::size_t> lp;
    std::vector<std::int32_t> li;
    std::vector<cplx> lx;
    std::vector<std::size_t> up;
    std::vector<std::int32_t> ui;
    std::vector<cplx> ux;
    std::vector<cplx> udiag;
    std::vector<std::int32_t> pinv;     // original row -> pivot position
    std::vector<std::int32_t> rowperm;  // pivot position -> original row
    double min_pivot = 0.0;

    std::size_t lnnz() const { return lx.size(); }
    std::size_t unnz() const { return ux.size(); }
};

SparseLU splu_factor(const CSC& a);

// Solve A x = b in place.
void splu_solve(const SparseLU& f, cplx* b);

}  // namespace ohe::la
