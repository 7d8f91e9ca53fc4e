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

#include "ohe/quantum/steady.hpp"

// Phase-space diagnostics over (r, x): the phase-averaged coherent (x)
// position quasi-probability Q, the reservoir-induced source density D,
// and the divergence-free flow (u, v) built from its cumulative integrals.
// Plus the Wigner function of the reduced cavity state.

namespace ohe::phasespace {

using quantum::DensityMatrix;
using quantum::EngineSystem;
using hilbert::HilbertDims;
using la::CMat;
using la::cplx;

struct PhaseGrid {
    std::vector<double> r;  // uniform, increasing, starting near 0
    std::vector<double> x;  // uniform, increasing
    std::size_t n_phi = 64;

    void validate() const;
    double dr() const { return r.size() > 1 ? r[1] - r[0] : 0.0; }
    double dx() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }
};

// r_max shrinks until the coherent-state Fock tail at the grid edge stays
// below tail_tol; x defaults to [-5, 5].
PhaseGrid default_grid(std::size_t n_cav, std::size_t n_r = 80,
                       std::size_t n_x = 120, std::size_t n_phi = 64,
                       double tail_tol = 1e-6);

struct PhaseField {
    PhaseGrid grid;
    // row-major [ir * nx + ix]
    std::vector<double> q, d, u, v;
};

// Normalized oscillator-basis wavefunctions psi_k(x), k < n, for the
// oscillator with zero-point length x0 (stable normalized recurrence).
std::vector<double> hermite_psi(std::size_t n, double x, double x0 = 1.0);

// Coherent amplitudes <n|alpha> for n < levels and the truncated tail mass.
struct CoherentVec {
    la::cvec amp;
    double tail = 0.0;
};
CoherentVec coherent_amplitudes(std::size_t levels, cplx alpha);

// Coherent (x) position probe used by the quasi-probability sandwiches.
struct CoherentPositionProbe {
    la::cvec coherent;             // n_cav amplitudes
    std::vector<double> position;  // n_mol Hermite values
    double fock_tail = 0.0;
};
CoherentPositionProbe make_probe(const HilbertDims& dims, double r, double phi,
                                 double x, double x0 = 1.0);

// (1/pi) Int_0^{2pi} <r e^{i phi}, x| M |r e^{i phi}, x> r dphi on the grid,
// trapezoid in phi (periodic, exact once n_phi exceeds the Fock bandwidth).
// M is any joint-space matrix; husimi() uses rho, source_density() uses
// (L_h + L_c) rho.
std::vector<double> phase_sandwich(const CMat& m, const HilbertDims& dims,
                                   const PhaseGrid& grid, double x0 = 1.0);

std::vector<double> husimi(const DensityMatrix& rho, const PhaseGrid& grid,
                           double x0 = 1.0);

std::vector<double> source_density(const EngineSystem& sys,
                                   const DensityMatrix& rho,
                                   const PhaseGrid& grid);

// u = -cumulative trapezoid of D along r; v = cumulative trapezoid along x.
void flow_field(PhaseField& field);

// Discrete divergence matched to the trapezoid cumulation (cell-centered,
// face-averaged): zero to roundoff by construction. Returns max |div|.
double matched_divergence_max(const PhaseField& field);

// Plain central-difference divergence on interior nodes (diagnostic; O(h^2)).
double central_divergence_max(const PhaseField& field);

// Complete pipeline for an engine steady state.
PhaseField phase_field(const EngineSystem& sys, const DensityMatrix& rho,
                       const PhaseGrid& grid);

// Wigner function of a cavity-factor state on the complex plane
// alpha = q + i p, displaced-parity normalization Int W d^2alpha = 1.
// Row-major [iq * np + ip].
std::vector<double> wigner_cavity(const CMat& rho_cav,
                                  const std::vector<double>& q_axis,
                                  const std::vector<double>& p_axis,
                                  double tail_tol = 1e-6);

// Largest |alpha| whose truncated coherent tail stays below tail_tol.
double max_reliable_amplitude(std::size_t levels, double tail_tol = 1e-6);

// x-resolved trace of the cavity-traced matrix: sum_ij psi_i(x) psi_j(x)
// (Tr_cav M)_ij; the r-integral of the sandwich must reproduce it.
std::vector<double> x_resolved_trace(const CMat& m, const HilbertDims& dims,
                                     const std::vector<double>& xs,
                                     double x0 = 1.0);

}  // namespace ohe::phasespace
