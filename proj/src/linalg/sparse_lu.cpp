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

#include "ohe/linalg/sparse_lu.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ohe::la {

SparseLU splu_factor(const CSC& a) {
    if (a.rows != a.cols)
        throw std::invalid_argument("splu_factor: matrix not square");
    const std::size_t n = a.rows;
    SparseLU f;
    f.n = n;
    f.pinv.assign(n, -1);
    f.rowperm.assign(n, -1);
    f.lp.assign(n + 1, 0);
    f.up.assign(n + 1, 0);
    f.min_pivot = std::numeric_limits<double>::infinity();
    f.li.reserve(4 * a.val.size());
    f.lx.reserve(4 * a.val.size());
    f.ui.reserve(4 * a.val.size());
    f.ux.reserve(4 * a.val.size());
    f.udiag.assign(n, cplx{0.0, 0.0});

    std::vector<cplx> x(n, cplx{0.0, 0.0});
    std::vector<std::int32_t> stamp(n, -1);
    std::vector<std::int32_t> reach(n);       // xi, filled from `top` down
    std::vector<std::int32_t> dfs_stack(n);
    std::vector<std::size_t> scan_pos(n);

    for (std::size_t j = 0; j < n; ++j) {
        const std::int32_t jj = static_cast<std::int32_t>(j);

        // Symbolic step: reach of pattern A(:,j) over the graph of L,
        // emitted in topological order (ancestors first).
        std::size_t top = n;
        for (std::size_t p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
            std::int32_t i0 = a.row[p];
            if (stamp[i0] == jj) continue;
            std::size_t head = 0;
            dfs_stack[head] = i0;
            stamp[i0] = jj;
            scan_pos[i0] = 0;
            while (true) {
                const std::int32_t i = dfs_stack[head];
                const std::int32_t q = f.pinv[i];
                const std::size_t begin = q >= 0 ? f.lp[q] : 0;
                const std::size_t end = q >= 0 ? f.lp[q + 1] : 0;
                bool descended = false;
                for (std::size_t s = begin + scan_pos[i]; s < end; ++s) {
                    const std::int32_t child = f.li[s];
                    scan_pos[i] = s + 1 - begin;
                    if (stamp[child] != jj) {
                        stamp[child] = jj;
                        scan_pos[child] = 0;
                        dfs_stack[++head] = child;
                        descended = true;
                        break;
                    }
                }
                if (descended) continue;
                reach[--top] = i;
                if (head == 0) break;
                --head;
            }
        }

        // Numeric step: sparse triangular solve with L(:,0..j-1).
        for (std::size_t p = top; p < n; ++p) x[reach[p]] = cplx{0.0, 0.0};
        for (std::size_t p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p)
            x[a.row[p]] = a.val[p];
        for (std::size_t p = top; p < n; ++p) {
            const std::int32_t i = reach[p];
            const std::int32_t q = f.pinv[i];
            if (q < 0) continue;
            const cplx xi = x[i];
            if (xi.real() == 0.0 && xi.imag() == 0.0) continue;
            for (std::size_t s = f.lp[q]; s < f.lp[q + 1]; ++s)
                x[f.li[s]] -= f.lx[s] * xi;
        }

        // Partial pivot among not-yet-pivotal rows in the reach.
        std::int32_t pivrow = -1;
        double best = -1.0;
        for (std::size_t p = top; p < n; ++p) {
            const std::int32_t i = reach[p];
            if (f.pinv[i] >= 0) continue;
            const double v = std::abs(x[i]);
            if (v > best) {
                best = v;
                pivrow = i;
            }
        }
        if (pivrow < 0 || best == 0.0)
            throw std::runtime_error("splu_factor: singular matrix at column " +
                                     std::to_string(j));
        const cplx pivot = x[pivrow];
        f.min_pivot = std::min(f.min_pivot, best);
        f.pinv[pivrow] = jj;
        f.rowperm[j] = pivrow;
        f.udiag[j] = pivot;

        for (std::size_t p = top; p < n; ++p) {
            const std::int32_t i = reach[p];
            const cplx v = x[i];
            if (f.pinv[i] >= 0 && i != pivrow) {
                if (v.real() != 0.0 || v.imag() != 0.0) {
                    f.ui.push_back(f.pinv[i]);
                    f.ux.push_back(v);
                }
            } else if (i != pivrow) {
                if (v.real() != 0.0 || v.imag() != 0.0) {
                    f.li.push_back(i);
                    f.lx.push_back(v / pivot);
                }
            }
        }
        f.lp[j + 1] = f.lx.size();
        f.up[j + 1] = f.ux.size();
    }
    return f;
}

void splu_solve(const SparseLU& f, cplx* b) {
    const std::size_t n = f.n;
    std::vector<cplx> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx v = b[f.rowperm[j]];
        y[j] = v;
        if (v.real() == 0.0 && v.imag() == 0.0) continue;
        for (std::size_t s = f.lp[j]; s < f.lp[j + 1]; ++s)
            b[f.li[s]] -= f.lx[s] * v;
    }
    for (std::size_t jj = n; jj-- > 0;) {
        y[jj] /= f.udiag[jj];
        const cplx v = y[jj];
        if (v.real() == 0.0 && v.imag() == 0.0) continue;
        for (std::size_t s = f.up[jj]; s < f.up[jj + 1]; ++s)
            y[f.ui[s]] -= f.ux[s] * v;
    }
    for (std::size_t i = 0; i < n; ++i) b[i] = y[i];
}

}  // namespace ohe::la
