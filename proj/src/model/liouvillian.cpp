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

#include "ohe/model/liouvillian.hpp"

#include "ohe/linalg/eig.hpp"

#include <cmath>

namespace ohe::model {

using hilbert::dissipator;
using hilbert::identity_op;
using hilbert::ladder;
using hilbert::operator_function;
using hilbert::spost;
using hilbert::spre;
using hilbert::tensor;
using la::cplx;
using la::CSR;

MolecularOps build_molecular_ops(const EngineParams& p, std::size_t n_mol) {
    MolecularOps ops;
    ops.n_mol = n_mol;
    const double x0 = p.x_zpf();
    const Operator b = ladder(n_mol);
    const CMat bm = b.dense();
    const CMat bdag = la::adjoint(bm);

    ops.x = x0 * (bm + bdag);
    ops.p = cplx{0.0, p.hbar / (2.0 * x0)} * (bdag - bm);

    Operator xop = hilbert::from_dense(ops.x);
    xop.mark_hermitian();
    const Operator vop = operator_function(
        xop, [&p](double x) { return potential(x, p); });

    // Kinetic closure: solve [x, T] = (i hbar / m) p in the x eigenbasis
    // (off-diagonal entries; diagonal from p.p/2m). Unlike the plain
    // matrix square, T keeps the radiation-pressure power identity exact
    // in the truncated algebra; it matches p^2/2m up to an edge-supported
    // correction.
    const la::EigH xe = la::eig_hermitian(xop.dense());
    const CMat p_x = la::matmul(la::adjoint(xe.vecs),
                                la::matmul(ops.p, xe.vecs));
    const CMat psq_x =
        la::matmul(la::adjoint(xe.vecs),
                   la::matmul(la::matmul(ops.p, ops.p), xe.vecs));
    CMat t_x(n_mol, n_mol);
    const cplx ihm{0.0, p.hbar / p.mass};
    for (std::size_t i = 0; i < n_mol; ++i) {
        // the p.p diagonal leaves the ladder offset at k instead of k+1/2;
        // restore the zero point with a physically inert constant
        t_x(i, i) = cplx{psq_x(i, i).real() / (2.0 * p.mass) +
                             0.5 * p.hbar * p.omega_m,
                         0.0};
        for (std::size_t j = 0; j < n_mol; ++j)
            if (i != j) t_x(i, j) = ihm * p_x(i, j) / (xe.vals[i] - xe.vals[j]);
    }
    ops.h_mol = la::matmul(xe.vecs, la::matmul(t_x, la::adjoint(xe.vecs)));
    // exact Hermitian cleanup against roundoff
    for (std::size_t i = 0; i < n_mol; ++i) {
        ops.h_mol(i, i) = cplx{ops.h_mol(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n_mol; ++j) {
            const cplx m = 0.5 * (ops.h_mol(i, j) +
                                  std::conj(ops.h_mol(j, i)));
            ops.h_mol(i, j) = m;
            ops.h_mol(j, i) = std::conj(m);
        }
    }
    ops.h_mol += vop.dense();

    // sqrt is well defined: both rates are strictly positive
    const Operator kh = operator_function(
        xop, [&p](double x) { return std::sqrt(rates(x, p).hot); });
    const Operator kc = operator_function(
        xop, [&p](double x) { return std::sqrt(rates(x, p).cold); });
    ops.k_hot = kh.dense();
    ops.k_cold = kc.dense();
    return ops;
}

namespace {

Operator number_op(std::size_t n) {
    la::CooBuilder b(n, n);
    for (std::size_t k = 0; k < n; ++k)
        b.add(k, k, cplx{static_cast<double>(k), 0.0});
    Operator op;
    op.mat = b.compress();
    op.hermitian = true;
    return op;
}

}  // namespace

Operator build_h_a_eff(const EngineParams& p, const HilbertDims& dims) {
    if (!dims.valid()) throw DimensionError("build_h_a_eff: bad dims");
    const MolecularOps mol = build_molecular_ops(p, dims.n_mol);
    const Operator num = number_op(dims.n_cav);
    const Operator eye_m = identity_op(dims.n_mol);
    Operator freq = hilbert::from_dense(
        p.hbar * p.omega_a * la::CMat::identity(dims.n_mol) +
        cplx{p.hbar * p.g_omega, 0.0} * mol.x);
    freq.mark_hermitian();
    (void)eye_m;
    Operator h = tensor(num, freq);
    h.mark_hermitian();
    return h;
}

Operator build_hamiltonian(const EngineParams& p, const HilbertDims& dims) {
    if (!dims.valid()) throw DimensionError("build_hamiltonian: bad dims");
    const MolecularOps mol = build_molecular_ops(p, dims.n_mol);
    Operator h = build_h_a_eff(p, dims);
    Operator hmol = hilbert::from_dense(mol.h_mol, 1e-14);
    h.mat = la::csr_add(h.mat,
                        tensor(identity_op(dims.n_cav), hmol).mat);
    h.mark_hermitian();
    return h;
}

LiouvillianParts build_liouvillian(const EngineParams& p,
                                   const HilbertDims& dims,
                                   std::size_t max_nnz) {
    if (!dims.valid()) throw DimensionError("build_liouvillian: bad dims");
    p.validate();
    LiouvillianParts parts;
    parts.dims = dims;

    const MolecularOps mol = build_molecular_ops(p, dims.n_mol);
    const Operator a = ladder(dims.n_cav);
    Operator adag;
    adag.mat = la::csr_adjoint(a.mat);

    Operator kh = hilbert::from_dense(mol.k_hot, 1e-14);
    Operator kc = hilbert::from_dense(mol.k_cold, 1e-14);

    // Projected size of the four jump sandwiches; bail out before
    // allocating tens of gigabytes on oversized dims.
    const std::size_t jump_nnz = a.mat.nnz() * kh.mat.nnz();
    if (4 * jump_nnz * jump_nnz > max_nnz)
        throw NumericalError(
            "build_liouvillian: superoperator too large to assemble "
            "explicitly; use the ladder steady-state solver");

    parts.h_total = build_hamiltonian(p, dims);
    parts.h_a_eff = build_h_a_eff(p, dims);

    const cplx minus_i_over_h{0.0, -1.0 / p.hbar};
    parts.ham.dims = dims;
    parts.ham.mat = la::csr_scale(
        la::csr_add(spre(parts.h_total).mat, spost(parts.h_total).mat,
                    cplx{-1.0, 0.0}),
        minus_i_over_h);

    auto thermal_pair = [&](const Operator& k, double nbar) {
        const Operator l_down = tensor(a, k);
        const Operator l_up = tensor(adag, k);
        CSR s = la::csr_scale(dissipator(l_down).mat, cplx{nbar + 1.0, 0.0});
        if (nbar > 0.0)
            s = la::csr_add(s, dissipator(l_up).mat, cplx{nbar, 0.0});
        SuperOperator out;
        out.mat = std::move(s);
        out.dims = dims;
        return out;
    };
    parts.hot = thermal_pair(kh, p.n_hot);
    parts.cold = thermal_pair(kc, p.n_cold);

    // Caldeira-Leggett: -(i gamma / 2 hbar)[x, {p, .}]
    //                   - (gamma / hbar)(n_th + 1/2)[x, [x, .]]
    const Operator xj = tensor(identity_op(dims.n_cav),
                               hilbert::from_dense(mol.x, 1e-14));
    const Operator pj = tensor(identity_op(dims.n_cav),
                               hilbert::from_dense(mol.p, 1e-14));
    const CSR comm_x = la::csr_add(spre(xj).mat, spost(xj).mat, cplx{-1.0, 0.0});
    const CSR anti_p = la::csr_add(spre(pj).mat, spost(pj).mat);
    CSR cl = la::csr_scale(la::csr_matmul(comm_x, anti_p),
                           cplx{0.0, -p.gamma / (2.0 * p.hbar)});
    cl = la::csr_add(
        cl, la::csr_matmul(comm_x, comm_x),
        cplx{-(p.gamma / p.hbar) * (p.n_th + 0.5), 0.0});
    parts.brownian.mat = std::move(cl);
    parts.brownian.dims = dims;

    parts.full.dims = dims;
    parts.full.mat = la::csr_add(parts.ham.mat, parts.hot.mat);
    parts.full.mat = la::csr_add(parts.full.mat, parts.cold.mat);
    parts.full.mat = la::csr_add(parts.full.mat, parts.brownian.mat);
    return parts;
}

}  // namespace ohe::model
