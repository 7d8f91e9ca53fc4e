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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ohe/kernels/kernels.hpp"

namespace ohe::la {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Dense row-major complex matrix. Deliberately small: storage, element
// access, and the handful of products the solvers need; everything goes
// through the kernel dispatch table.
class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const cplx& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    cplx* row(std::size_t i) { return data_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(cplx a);

  private:
    std::size_t rows_ = 0, cols_ = 0;
    cvec data_;
};

CMat matmul(const CMat& a, const CMat& b, cplx alpha = {1.0, 0.0});
// c += alpha * a * b, in place
void matmul_acc(CMat& c, const CMat& a, const CMat& b, cplx alpha = {1.0, 0.0});
cvec mat_vec(const CMat& a, const cvec& x);

CMat adjoint(const CMat& a);
CMat transpose(const CMat& a);
CMat conjugate(const CMat& a);

cplx trace(const CMat& a);
double max_abs(const CMat& a);
double fro_norm(const CMat& a);
// max |a - a^dagger| over entries
double herm_defect(const CMat& a);

inline CMat operator+(CMat a, const CMat& b) { return a += b; }
inline CMat operator-(CMat a, const CMat& b) { return a -= b; }
inline CMat operator*(cplx s, CMat a) { return a *= s; }
inline CMat operator*(const CMat& a, const CMat& b) { return matmul(a, b); }

CMat commutator(const CMat& a, const CMat& b);      // ab - ba
CMat anticommutator(const CMat& a, const CMat& b);  // ab + ba

// Vector helpers over the kernel table.
void axpy(cplx a, const cvec& x, cvec& y);
void scal(cplx a, cvec& x);
cplx dotc(const cvec& x, const cvec& y);
double nrm2(const cvec& x);

}  // namespace ohe::la
