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

#include "ohe/linalg/matrix.hpp"

#include <cmath>

namespace ohe::la {

namespace {
const kern::Backend& K() { return kern::active(); }
}  // namespace

CMat& CMat::operator+=(const CMat& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_)
        throw std::invalid_argument("CMat +=: shape mismatch");
    K().zaxpy(data_.size(), cplx{1.0, 0.0}, o.data_.data(), data_.data());
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_)
        throw std::invalid_argument("CMat -=: shape mismatch");
    K().zaxpy(data_.size(), cplx{-1.0, 0.0}, o.data_.data(), data_.data());
    return *this;
}

CMat& CMat::operator*=(cplx a) {
    K().zscal(data_.size(), a, data_.data());
    return *this;
}

CMat matmul(const CMat& a, const CMat& b, cplx alpha) {
    CMat c(a.rows(), b.cols());
    matmul_acc(c, a, b, alpha);
    return c;
}

void matmul_acc(CMat& c, const CMat& a, const CMat& b, cplx alpha) {
    if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
        throw std::invalid_argument("matmul: shape mismatch");
    K().zgemm_nn(a.rows(), b.cols(), a.cols(), alpha, a.data(), a.cols(),
                 b.data(), b.cols(), c.data(), c.cols());
}

cvec mat_vec(const CMat& a, const cvec& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: shape");
    cvec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        y[i] = K().zdotu(a.cols(), a.row(i), x.data());
    return y;
}

CMat adjoint(const CMat& a) {
    CMat r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(j, i) = std::conj(a(i, j));
    return r;
}

CMat transpose(const CMat& a) {
    CMat r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

CMat conjugate(const CMat& a) {
    CMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        r.data()[i] = std::conj(a.data()[i]);
    return r;
}

cplx trace(const CMat& a) {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows() && i < a.cols(); ++i) t += a(i, i);
    return t;
}

double max_abs(const CMat& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i]));
    return m;
}

double fro_norm(const CMat& a) {
    return std::sqrt(K().znrm2sq(a.size(), a.data()));
}

double herm_defect(const CMat& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

CMat commutator(const CMat& a, const CMat& b) {
    CMat c = matmul(a, b);
    matmul_acc(c, b, a, cplx{-1.0, 0.0});
    return c;
}

CMat anticommutator(const CMat& a, const CMat& b) {
    CMat c = matmul(a, b);
    matmul_acc(c, b, a, cplx{1.0, 0.0});
    return c;
}

void axpy(cplx a, const cvec& x, cvec& y) {
    K().zaxpy(x.size(), a, x.data(), y.data());
}

void scal(cplx a, cvec& x) { K().zscal(x.size(), a, x.data()); }

cplx dotc(const cvec& x, const cvec& y) {
    return K().zdotc(x.size(), x.data(), y.data());
}

double nrm2(const cvec& x) { return std::sqrt(K().znrm2sq(x.size(), x.data())); }

}  // namespace ohe::la
