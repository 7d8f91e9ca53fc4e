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

#include "ohe/hilbert/hilbert.hpp"

#include <cmath>

#include "ohe/linalg/eig.hpp"

namespace ohe::hilbert {

namespace {
constexpr double kSparsifyDrop = 1e-14;
}

void Operator::mark_hermitian(double tol) {
    const CMat d = dense();
    if (la::herm_defect(d) > tol)
        throw NumericalError("operator failed Hermiticity check");
    hermitian = true;
}

Operator ladder(std::size_t n) {
    if (n < 2) throw DimensionError("ladder: need at least 2 levels");
    la::CooBuilder b(n, n);
    for (std::size_t k = 1; k < n; ++k)
        b.add(k - 1, k, cplx{std::sqrt(static_cast<double>(k)), 0.0});
    Operator op;
    op.mat = b.compress();
    return op;
}

Operator identity_op(std::size_t n) {
    Operator op;
    op.mat = la::csr_identity(n);
    op.hermitian = true;
    return op;
}

Operator from_dense(const CMat& m, double drop_tol) {
    Operator op;
    op.mat = la::csr_from_dense(m, drop_tol);
    return op;
}

Operator tensor(const Operator& cav, const Operator& mol) {
    if (cav.mat.rows != cav.mat.cols || mol.mat.rows != mol.mat.cols)
        throw DimensionError("tensor: factors must be square");
    Operator op;
    op.mat = la::csr_kron(cav.mat, mol.mat);
    op.dims = HilbertDims{cav.mat.rows, mol.mat.rows};
    if (cav.hermitian && mol.hermitian) op.hermitian = true;
    return op;
}

Operator operator_function(const Operator& o,
                           const std::function<double(double)>& f) {
    const CMat d = o.dense();
    if (la::herm_defect(d) > 1e-10 * std::max(1.0, la::max_abs(d)))
        throw NumericalError("operator_function: input not Hermitian");
    la::EigH eig = la::eig_hermitian(d);
    const std::size_t n = d.rows();
    // U diag(f(lambda)) U^dagger; scale columns of U, multiply by U^dagger.
    CMat scaled = eig.vecs;
    for (std::size_t j = 0; j < n; ++j) {
        const double fv = f(eig.vals[j]);
        if (!std::isfinite(fv))
            throw NumericalError("operator_function: f not finite on spectrum");
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fv;
    }
    CMat res = la::matmul(scaled, la::adjoint(eig.vecs));
    // real f preserves Hermiticity; make it exact against roundoff
    for (std::size_t i = 0; i < n; ++i) {
        res(i, i) = cplx{res(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (res(i, j) + std::conj(res(j, i)));
            res(i, j) = m;
            res(j, i) = std::conj(m);
        }
    }
    Operator out;
    out.mat = la::csr_from_dense(res, kSparsifyDrop);
    out.dims = o.dims;
    out.hermitian = true;
    return out;
}

SuperOperator dissipator(const Operator& l) {
    const std::size_t d = l.dim();
    const CSR ldag = la::csr_adjoint(l.mat);
    const CSR ldl = la::csr_matmul(ldag, l.mat);
    const CSR eye = la::csr_identity(d);
    CSR s = la::csr_kron(la::csr_conjugate(l.mat), l.mat);
    s = la::csr_add(s, la::csr_kron(eye, ldl), cplx{-0.5, 0.0});
    s = la::csr_add(s, la::csr_kron(la::csr_transpose(ldl), eye),
                    cplx{-0.5, 0.0});
    SuperOperator out;
    out.mat = std::move(s);
    out.dims = l.dims;
    return out;
}

SuperOperator spre(const Operator& a) {
    SuperOperator s;
    s.mat = la::csr_kron(la::csr_identity(a.dim()), a.mat);
    s.dims = a.dims;
    return s;
}

SuperOperator spost(const Operator& b) {
    SuperOperator s;
    s.mat = la::csr_kron(la::csr_transpose(b.mat), la::csr_identity(b.dim()));
    s.dims = b.dims;
    return s;
}

cvec vectorize(const CMat& rho) {
    const std::size_t n = rho.rows();
    if (rho.cols() != n) throw DimensionError("vectorize: not square");
    cvec v(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) v[j * n + i] = rho(i, j);
    return v;
}

CMat devectorize(const cvec& v) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(
        static_cast<double>(v.size()))));
    if (n * n != v.size())
        throw DimensionError("devectorize: length is not a perfect square");
    CMat rho(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) rho(i, j) = v[j * n + i];
    return rho;
}

double trace_of_applied(const SuperOperator& s, const CMat& rho) {
    const cvec out = s.apply(vectorize(rho));
    const std::size_t n = rho.rows();
    cplx tr{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) tr += out[i * n + i];
    return std::abs(tr);
}

}  // namespace ohe::hilbert
