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

#include "ohe/linalg/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace ohe::la {

CSR CooBuilder::compress(double drop_tol) const {
    std::vector<Trip> t = trips_;
    std::sort(t.begin(), t.end(), [](const Trip& a, const Trip& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    CSR out;
    out.rows = rows_;
    out.cols = cols_;
    out.row_ptr.assign(rows_ + 1, 0);
    out.col.reserve(t.size());
    out.val.reserve(t.size());
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
        while (k < t.size() && t[k].i == r) {
            cplx v = t[k].v;
            const std::size_t j = t[k].j;
            ++k;
            while (k < t.size() && t[k].i == r && t[k].j == j) {
                v += t[k].v;
                ++k;
            }
            if (std::abs(v) > drop_tol) {
                out.col.push_back(static_cast<std::int32_t>(j));
                out.val.push_back(v);
            }
        }
        out.row_ptr[r + 1] = out.val.size();
    }
    return out;
}

CSR csr_identity(std::size_t n) {
    CSR a;
    a.rows = a.cols = n;
    a.row_ptr.resize(n + 1);
    a.col.resize(n);
    a.val.assign(n, cplx{1.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        a.row_ptr[i] = i;
        a.col[i] = static_cast<std::int32_t>(i);
    }
    a.row_ptr[n] = n;
    return a;
}

CSR csr_from_dense(const CMat& m, double drop_tol) {
    CooBuilder b(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j)) > drop_tol) b.add(i, j, m(i, j));
    return b.compress();
}

CMat csr_to_dense(const CSR& a) {
    CMat m(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
            m(i, a.col[p]) += a.val[p];
    return m;
}

namespace {
CSR transpose_impl(const CSR& a, bool conj) {
    CSR t;
    t.rows = a.cols;
    t.cols = a.rows;
    t.row_ptr.assign(t.rows + 1, 0);
    t.col.resize(a.nnz());
    t.val.resize(a.nnz());
    for (std::size_t p = 0; p < a.nnz(); ++p) ++t.row_ptr[a.col[p] + 1];
    for (std::size_t r = 0; r < t.rows; ++r) t.row_ptr[r + 1] += t.row_ptr[r];
    std::vector<std::size_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            const std::size_t q = next[a.col[p]]++;
            t.col[q] = static_cast<std::int32_t>(i);
            t.val[q] = conj ? std::conj(a.val[p]) : a.val[p];
        }
    return t;
}
}  // namespace

CSR csr_transpose(const CSR& a) { return transpose_impl(a, false); }
CSR csr_adjoint(const CSR& a) { return transpose_impl(a, true); }

CSR csr_conjugate(const CSR& a) {
    CSR c = a;
    for (auto& v : c.val) v = std::conj(v);
    return c;
}

CSR csr_add(const CSR& a, const CSR& b, cplx alpha) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("csr_add: shape mismatch");
    CSR c;
    c.rows = a.rows;
    c.cols = a.cols;
    c.row_ptr.assign(a.rows + 1, 0);
    c.col.reserve(a.nnz() + b.nnz());
    c.val.reserve(a.nnz() + b.nnz());
    for (std::size_t r = 0; r < a.rows; ++r) {
        std::size_t pa = a.row_ptr[r], pb = b.row_ptr[r];
        const std::size_t ea = a.row_ptr[r + 1], eb = b.row_ptr[r + 1];
        while (pa < ea || pb < eb) {
            std::int32_t ja = pa < ea ? a.col[pa] : INT32_MAX;
            std::int32_t jb = pb < eb ? b.col[pb] : INT32_MAX;
            if (ja < jb) {
                c.col.push_back(ja);
                c.val.push_back(a.val[pa++]);
            } else if (jb < ja) {
                c.col.push_back(jb);
                c.val.push_back(alpha * b.val[pb++]);
            } else {
                const cplx v = a.val[pa++] + alpha * b.val[pb++];
                if (v.real() != 0.0 || v.imag() != 0.0) {
                    c.col.push_back(ja);
                    c.val.push_back(v);
                }
            }
        }
        c.row_ptr[r + 1] = c.val.size();
    }
    return c;
}

CSR csr_scale(CSR a, cplx alpha) {
    kern::active().zscal(a.val.size(), alpha, a.val.data());
    return a;
}

CSR csr_matmul(const CSR& a, const CSR& b) {
    if (a.cols != b.rows) throw std::invalid_argument("csr_matmul: shape");
    CSR c;
    c.rows = a.rows;
    c.cols = b.cols;
    c.row_ptr.assign(a.rows + 1, 0);
    std::vector<cplx> acc(b.cols, cplx{0.0, 0.0});
    std::vector<std::int32_t> mark(b.cols, -1);
    std::vector<std::int32_t> cols_hit;
    for (std::size_t i = 0; i < a.rows; ++i) {
        cols_hit.clear();
        for (std::size_t pa = a.row_ptr[i]; pa < a.row_ptr[i + 1]; ++pa) {
            const cplx av = a.val[pa];
            const std::size_t k = a.col[pa];
            for (std::size_t pb = b.row_ptr[k]; pb < b.row_ptr[k + 1]; ++pb) {
                const std::int32_t j = b.col[pb];
                if (mark[j] != static_cast<std::int32_t>(i)) {
                    mark[j] = static_cast<std::int32_t>(i);
                    acc[j] = cplx{0.0, 0.0};
                    cols_hit.push_back(j);
                }
                acc[j] += av * b.val[pb];
            }
        }
        std::sort(cols_hit.begin(), cols_hit.end());
        for (const std::int32_t j : cols_hit) {
            if (acc[j].real() != 0.0 || acc[j].imag() != 0.0) {
                c.col.push_back(j);
                c.val.push_back(acc[j]);
            }
        }
        c.row_ptr[i + 1] = c.val.size();
    }
    return c;
}

CSR csr_kron(const CSR& a, const CSR& b) {
    CSR c;
    c.rows = a.rows * b.rows;
    c.cols = a.cols * b.cols;
    c.row_ptr.assign(c.rows + 1, 0);
    c.col.reserve(a.nnz() * b.nnz());
    c.val.reserve(a.nnz() * b.nnz());
    for (std::size_t ia = 0; ia < a.rows; ++ia) {
        for (std::size_t ib = 0; ib < b.rows; ++ib) {
            for (std::size_t pa = a.row_ptr[ia]; pa < a.row_ptr[ia + 1]; ++pa) {
                const std::size_t jbase = a.col[pa] * b.cols;
                const cplx av = a.val[pa];
                for (std::size_t pb = b.row_ptr[ib]; pb < b.row_ptr[ib + 1];
                     ++pb) {
                    c.col.push_back(
                        static_cast<std::int32_t>(jbase + b.col[pb]));
                    c.val.push_back(av * b.val[pb]);
                }
            }
            c.row_ptr[ia * b.rows + ib + 1] = c.val.size();
        }
    }
    return c;
}

void spmv(const CSR& a, const cplx* x, cplx* y) {
    kern::active().csr_spmv(a.rows, a.row_ptr.data(), a.col.data(),
                            a.val.data(), x, y);
}

cvec spmv(const CSR& a, const cvec& x) {
    cvec y(a.rows);
    spmv(a, x.data(), y.data());
    return y;
}

double csr_max_abs(const CSR& a) {
    double m = 0.0;
    for (const auto& v : a.val) m = std::max(m, std::abs(v));
    return m;
}

CSC csr_to_csc(const CSR& a) {
    const CSR t = csr_transpose(a);
    CSC c;
    c.rows = a.rows;
    c.cols = a.cols;
    c.col_ptr = t.row_ptr;
    c.row = t.col;
    c.val = t.val;
    return c;
}

}  // namespace ohe::la
