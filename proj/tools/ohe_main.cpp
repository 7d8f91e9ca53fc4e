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

// Command-line front end: deterministic sweep/field outputs for the
// engine's classical and quantum regimes. Exit codes: 0 success,
// 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "ohe/classical/analysis.hpp"
#include "ohe/io/config.hpp"
#include "ohe/io/table.hpp"
#include "ohe/normalmodes/normalmodes.hpp"
#include "ohe/phasespace/phasespace.hpp"
#include "ohe/quantum/observables.hpp"
#include "ohe/util/parallel.hpp"

using namespace ohe;
using io::CsvWriter;
using io::RunConfig;

namespace {

using Clock = std::chrono::steady_clock;

std::string out_path(const RunConfig& rc, const std::string& name) {
    io::ensure_directory(rc.out_dir);
    return rc.out_dir + "/" + name;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path);
    out << j.dump(2) << "\n";
}

quantum::SteadyStateResult solve_point(const model::EngineParams& p,
                                       const hilbert::HilbertDims& dims,
                                       bool audit) {
    // the explicit superoperator is only worthwhile on tiny problems;
    // the ladder reduction covers production truncations
    if (dims.joint() <= 64) {
        const auto parts = model::build_liouvillian(p, dims);
        return quantum::steady_state(parts.full);
    }
    const auto sys = quantum::make_engine_system(p, dims);
    return quantum::steady_state_ladder(sys, 1e-6, audit);
}

hilbert::HilbertDims resolve_dims(const RunConfig& rc) {
    hilbert::HilbertDims dims{rc.dims.n_cav, rc.dims.n_mol};
    if (rc.dims.auto_dims) {
        const auto rep = quantum::converge_dims(rc.engine, dims,
                                                rc.dims.rtol);
        dims = rep.dims;
        std::fprintf(stderr, "converged dims: n_cav=%zu n_mol=%zu\n",
                     dims.n_cav, dims.n_mol);
    }
    return dims;
}

int cmd_classical_sim(const RunConfig& rc) {
    const classical::ClassicalState s0{rc.classical.n0, rc.classical.x0};
    const auto traj =
        classical::simulate(s0, rc.engine, rc.classical.t_max,
                            rc.classical.dt, rc.classical.store_every);
    CsvWriter csv(out_path(rc, "classical_sim.csv"), {"t", "n_a", "x"},
                  rc.resolved());
    for (std::size_t i = 0; i < traj.size(); ++i)
        csv.row(std::vector<double>{traj.t[i], traj.n_a[i], traj.x[i]});

    classical::ClassifyOptions opt;
    opt.t_max = rc.classical.t_max;
    opt.dt = rc.classical.dt;
    opt.store_every = rc.classical.store_every;
    opt.x_lo = rc.classical.x_probe_min;
    opt.x_hi = rc.classical.x_probe_max;
    const auto metrics = classical::classify_regime(rc.engine, opt);

    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    j["regime"] = classical::regime_name(metrics.regime);
    j["period"] = metrics.period;
    j["avg_power"] = metrics.avg_power;
    j["work"] = metrics.work;
    j["period_spread"] = metrics.period_spread;
    j["energy_loop_term"] = metrics.energy_loop_term;
    j["note"] = metrics.note;
    j["config"] = rc.resolved();
    write_json(out_path(rc, "classical_sim_metrics.json"), j);
    return 0;
}

int cmd_classical_sweep(const RunConfig& rc) {
    if (!((rc.sweep.axis1 == "g_kappa" && rc.sweep.axis2 == "beta") ||
          (rc.sweep.axis1 == "beta" && rc.sweep.axis2 == "g_kappa")))
        throw ConfigError("classical-sweep: axes must be (g_kappa, beta)");
    const auto v1 = rc.sweep.values1();
    const auto v2 = rc.sweep.values2();

    struct Row {
        double a1 = 0.0, a2 = 0.0, period = 0.0, power = 0.0, work = 0.0;
        std::string regime = "undetermined", error;
    };
    std::vector<Row> rows(v1.size() * v2.size());
    util::parallel_for(rows.size(), rc.workers, [&](std::size_t idx) {
        Row& r = rows[idx];
        r.a1 = v1[idx / v2.size()];
        r.a2 = v2[idx % v2.size()];
        model::EngineParams p = rc.engine;
        io::set_engine_param(p, rc.sweep.axis1, r.a1);
        io::set_engine_param(p, rc.sweep.axis2, r.a2);
        try {
            classical::ClassifyOptions opt;
            opt.t_max = rc.classical.t_max;
            opt.dt = rc.classical.dt;
            opt.store_every = rc.classical.store_every;
            opt.x_lo = rc.classical.x_probe_min;
            opt.x_hi = rc.classical.x_probe_max;
            const auto m = classical::classify_regime(p, opt);
            r.regime = classical::regime_name(m.regime);
            r.period = m.period;
            r.power = m.avg_power;
            r.work = m.work;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });

    CsvWriter csv(out_path(rc, "classical_sweep.csv"),
                  {rc.sweep.axis1, rc.sweep.axis2, "regime", "period",
                   "power", "work", "error"},
                  rc.resolved());
    for (const Row& r : rows)
        csv.row({CsvWriter::num(r.a1), CsvWriter::num(r.a2), r.regime,
                 CsvWriter::num(r.period), CsvWriter::num(r.power),
                 CsvWriter::num(r.work), r.error});

    // companion boundary curves over the same g_kappa range
    const auto& gvals = rc.sweep.axis1 == "g_kappa" ? v1 : v2;
    const auto curves = classical::operational_boundary(
        rc.engine, gvals, rc.classical.beta_max);
    CsvWriter bcsv(out_path(rc, "classical_boundary.csv"),
                   {"g_kappa", "family", "beta"}, rc.resolved());
    for (const auto& pt : curves.points)
        bcsv.row({CsvWriter::num(pt.g_kappa),
                  pt.family > 0 ? "+" : "-", CsvWriter::num(pt.beta)});
    return 0;
}

int cmd_boundary(const RunConfig& rc) {
    const auto gvals = rc.sweep.values1();
    if (rc.sweep.axis1 != "g_kappa")
        throw ConfigError("boundary: axis1 must be g_kappa");
    const auto curves = classical::operational_boundary(
        rc.engine, gvals, rc.classical.beta_max);
    CsvWriter csv(out_path(rc, "boundary.csv"),
                  {"g_kappa", "family", "beta"}, rc.resolved());
    for (const auto& pt : curves.points)
        csv.row({CsvWriter::num(pt.g_kappa), pt.family > 0 ? "+" : "-",
                 CsvWriter::num(pt.beta)});
    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    j["gaps"] = curves.gaps;
    j["config"] = rc.resolved();
    write_json(out_path(rc, "boundary_meta.json"), j);
    return 0;
}

int cmd_quantum_steady(const RunConfig& rc) {
    const auto dims = resolve_dims(rc);
    const auto ss = solve_point(rc.engine, dims, true);
    const auto sys = quantum::make_engine_system(rc.engine, dims);
    const auto t = quantum::thermo_report(sys, ss.rho);

    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    j["method"] = ss.method;
    j["n_cav"] = dims.n_cav;
    j["n_mol"] = dims.n_mol;
    j["residual"] = ss.residual_raw;
    j["min_eig"] = ss.min_eig;
    j["positivity_ok"] = ss.positivity_ok;
    j["n_a"] = t.n_a;
    j["q_hot"] = t.q_hot;
    j["q_cold"] = t.q_cold;
    j["p_eq7"] = t.p_eq7;
    j["p_np"] = t.p_np;
    j["dp_corr"] = t.dp_corr;
    j["g2"] = t.g2_defined ? nlohmann::json(t.g2) : nlohmann::json();
    j["config"] = rc.resolved();
    write_json(out_path(rc, "quantum_steady.json"), j);

    const la::CMat cav = quantum::reduced_cavity(ss.rho);
    CsvWriter csv(out_path(rc, "cavity_populations.csv"), {"n", "p"},
                  rc.resolved());
    for (std::size_t n = 0; n < dims.n_cav; ++n)
        csv.row(std::vector<double>{static_cast<double>(n),
                                    cav(n, n).real()});
    return 0;
}

int cmd_quantum_sweep(const RunConfig& rc) {
    const bool gk_beta = rc.sweep.axis1 == "g_kappa" &&
                         rc.sweep.axis2 == "beta";
    const bool gw_gk = rc.sweep.axis1 == "g_omega" &&
                       rc.sweep.axis2 == "g_kappa";
    if (!gk_beta && !gw_gk)
        throw ConfigError(
            "quantum-sweep: axes must be (g_kappa, beta) or "
            "(g_omega, g_kappa)");
    const auto dims = resolve_dims(rc);
    const auto v1 = rc.sweep.values1();
    const auto v2 = rc.sweep.values2();

    struct Row {
        double a1 = 0.0, a2 = 0.0;
        quantum::ThermoReport t;
        double residual = 0.0, min_eig = 0.0;
        bool pos_ok = true;
        std::string error;
    };
    std::vector<Row> rows(v1.size() * v2.size());
    util::parallel_for(rows.size(), rc.workers, [&](std::size_t idx) {
        Row& r = rows[idx];
        r.a1 = v1[idx / v2.size()];
        r.a2 = v2[idx % v2.size()];
        model::EngineParams p = rc.engine;
        io::set_engine_param(p, rc.sweep.axis1, r.a1);
        io::set_engine_param(p, rc.sweep.axis2, r.a2);
        try {
            const auto sys = quantum::make_engine_system(p, dims);
            const auto ss = quantum::steady_state_ladder(sys, 1e-6, true);
            r.t = quantum::thermo_report(sys, ss.rho);
            r.residual = ss.residual_raw;
            r.min_eig = ss.min_eig;
            r.pos_ok = ss.positivity_ok;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });

    CsvWriter csv(out_path(rc, "quantum_sweep.csv"),
                  {rc.sweep.axis1, rc.sweep.axis2, "n_a", "q_hot", "q_cold",
                   "p_eq7", "p_np", "dp_corr", "g2", "min_eig", "pos_ok",
                   "residual", "error"},
                  rc.resolved());
    for (const Row& r : rows)
        csv.row({CsvWriter::num(r.a1), CsvWriter::num(r.a2),
                 CsvWriter::num(r.t.n_a), CsvWriter::num(r.t.q_hot),
                 CsvWriter::num(r.t.q_cold), CsvWriter::num(r.t.p_eq7),
                 CsvWriter::num(r.t.p_np), CsvWriter::num(r.t.dp_corr),
                 r.t.g2_defined ? CsvWriter::num(r.t.g2) : "nan",
                 CsvWriter::num(r.min_eig), r.pos_ok ? "1" : "0",
                 CsvWriter::num(r.residual), r.error});
    return 0;
}

phasespace::PhaseGrid grid_from_config(const RunConfig& rc,
                                       std::size_t n_cav) {
    phasespace::PhaseGrid g = phasespace::default_grid(
        n_cav, rc.grid.n_r, rc.grid.n_x, rc.grid.n_phi);
    if (rc.grid.r_max > 0.0) {
        g.r.clear();
        for (std::size_t i = 0; i < rc.grid.n_r; ++i)
            g.r.push_back(rc.grid.r_max * static_cast<double>(i + 1) /
                          static_cast<double>(rc.grid.n_r));
    }
    g.x.clear();
    for (std::size_t i = 0; i < rc.grid.n_x; ++i)
        g.x.push_back(rc.grid.x_min +
                      (rc.grid.x_max - rc.grid.x_min) *
                          static_cast<double>(i) /
                          static_cast<double>(rc.grid.n_x - 1));
    return g;
}

int cmd_phase_space(const RunConfig& rc) {
    const auto dims = resolve_dims(rc);
    const auto sys = quantum::make_engine_system(rc.engine, dims);
    const auto ss = quantum::steady_state_ladder(sys, 1e-6, false);
    const auto grid = grid_from_config(rc, dims.n_cav);
    const auto field = phasespace::phase_field(sys, ss.rho, grid);

    CsvWriter csv(out_path(rc, "phase_field.csv"),
                  {"r", "x", "Q", "D", "u", "v"}, rc.resolved());
    const std::size_t nx = grid.x.size();
    for (std::size_t ir = 0; ir < grid.r.size(); ++ir)
        for (std::size_t ix = 0; ix < nx; ++ix)
            csv.row(std::vector<double>{grid.r[ir], grid.x[ix],
                                        field.q[ir * nx + ix],
                                        field.d[ir * nx + ix],
                                        field.u[ir * nx + ix],
                                        field.v[ir * nx + ix]});
    double qsum = 0.0;
    for (std::size_t ir = 0; ir < grid.r.size(); ++ir)
        for (std::size_t ix = 0; ix < nx; ++ix)
            qsum += field.q[ir * nx + ix] * grid.dr() * grid.dx();
    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    j["axes"]["r"] = grid.r;
    j["axes"]["x"] = grid.x;
    j["n_phi"] = grid.n_phi;
    j["q_normalization"] = qsum;
    j["matched_divergence_max"] = phasespace::matched_divergence_max(field);
    j["central_divergence_max"] = phasespace::central_divergence_max(field);
    j["config"] = rc.resolved();
    write_json(out_path(rc, "phase_field_axes.json"), j);

    // cavity Wigner on the same run
    const la::CMat cav = quantum::reduced_cavity(ss.rho);
    const double ext =
        rc.grid.wigner_extent > 0.0
            ? rc.grid.wigner_extent
            : phasespace::max_reliable_amplitude(dims.n_cav, 0.98e-6) /
                  std::sqrt(2.0);
    std::vector<double> q_axis(rc.grid.wigner_points),
        p_axis(rc.grid.wigner_points);
    for (std::size_t i = 0; i < q_axis.size(); ++i) {
        const double v = -ext + 2.0 * ext * static_cast<double>(i) /
                                    static_cast<double>(q_axis.size() - 1);
        q_axis[i] = v;
        p_axis[i] = v;
    }
    const auto w = phasespace::wigner_cavity(cav, q_axis, p_axis);
    CsvWriter wcsv(out_path(rc, "wigner.csv"), {"q", "p", "W"},
                   rc.resolved());
    for (std::size_t iq = 0; iq < q_axis.size(); ++iq)
        for (std::size_t ip = 0; ip < p_axis.size(); ++ip)
            wcsv.row(std::vector<double>{q_axis[iq], p_axis[ip],
                                         w[iq * p_axis.size() + ip]});
    io::write_axes_sidecar(out_path(rc, "wigner_axes.json"), rc.resolved(),
                           {{"q", q_axis}, {"p", p_axis}});
    return 0;
}

int cmd_wigner(const RunConfig& rc) {
    const auto dims = resolve_dims(rc);
    const auto sys = quantum::make_engine_system(rc.engine, dims);
    const auto ss = quantum::steady_state_ladder(sys, 1e-6, false);
    const la::CMat cav = quantum::reduced_cavity(ss.rho);
    const double ext =
        rc.grid.wigner_extent > 0.0
            ? rc.grid.wigner_extent
            : phasespace::max_reliable_amplitude(dims.n_cav, 0.98e-6) /
                  std::sqrt(2.0);
    std::vector<double> axis(rc.grid.wigner_points);
    for (std::size_t i = 0; i < axis.size(); ++i)
        axis[i] = -ext + 2.0 * ext * static_cast<double>(i) /
                             static_cast<double>(axis.size() - 1);
    const auto w = phasespace::wigner_cavity(cav, axis, axis);
    CsvWriter csv(out_path(rc, "wigner.csv"), {"q", "p", "W"},
                  rc.resolved());
    for (std::size_t iq = 0; iq < axis.size(); ++iq)
        for (std::size_t ip = 0; ip < axis.size(); ++ip)
            csv.row(std::vector<double>{axis[iq], axis[ip],
                                        w[iq * axis.size() + ip]});
    io::write_axes_sidecar(out_path(rc, "wigner_axes.json"), rc.resolved(),
                           {{"q", axis}, {"p", axis}});
    return 0;
}

int cmd_normal_modes(const RunConfig& rc) {
    const auto& nm = rc.normal;
    nm.params.validate();
    const auto fit = normalmodes::fit_effective_params(
        nm.params, nm.window_lo, nm.window_hi, nm.samples);

    CsvWriter csv(out_path(rc, "normal_modes.csv"),
                  {"x", "omega_a", "omega_b", "kappa_h_exact",
                   "kappa_c_exact", "kappa_h_fit", "sum_rule_residual",
                   "orthogonality_defect", "gap"},
                  rc.resolved());
    double min_gap = 1e300;
    for (std::size_t i = 0; i < nm.table_points; ++i) {
        const double x =
            nm.table_lo + (nm.table_hi - nm.table_lo) *
                              static_cast<double>(i) /
                              static_cast<double>(nm.table_points - 1);
        const auto s = normalmodes::bogoliubov(x, nm.params);
        const double sum_res =
            s.kappa_h + s.kappa_c -
            0.5 * (nm.params.kappa_a + nm.params.kappa_b);
        double ortho = 0.0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const double dot = s.u[r][0] * s.u[c][0] +
                                   s.u[r][1] * s.u[c][1];
                ortho = std::max(ortho,
                                 std::abs(dot - (r == c ? 1.0 : 0.0)));
            }
        const double fitk =
            fit.kappa0 /
            (1.0 + std::exp(fit.g_kappa * (x - fit.center)));
        min_gap = std::min(min_gap, s.omega_a - s.omega_b);
        csv.row(std::vector<double>{x, s.omega_a, s.omega_b, s.kappa_h,
                                    s.kappa_c, fitk, sum_res, ortho,
                                    s.omega_a - s.omega_b});
    }
    // analytic anticrossing point, where the gap equals g exactly
    const double x_star = (nm.params.omega_b_bare - nm.params.omega_a_bare) /
                          (nm.params.g_a - nm.params.g_b);
    const auto star = normalmodes::bogoliubov(x_star, nm.params);

    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    j["fit"]["g_kappa"] = fit.g_kappa;
    j["fit"]["kappa0"] = fit.kappa0;
    j["fit"]["center"] = fit.center;
    j["fit"]["g_omega"] = fit.g_omega;
    j["fit"]["omega_a0"] = fit.omega_a0;
    j["fit"]["logistic_rms_rel"] = fit.logistic_rms_rel;
    j["fit"]["logistic_max_rel"] = fit.logistic_max_rel;
    j["fit"]["linear_rms_rel"] = fit.linear_rms_rel;
    j["anticrossing"]["x"] = x_star;
    j["anticrossing"]["gap"] = star.omega_a - star.omega_b;
    j["min_gap_on_table"] = min_gap;
    j["config"] = rc.resolved();
    write_json(out_path(rc, "normal_modes_fit.json"), j);
    return 0;
}

int cmd_converge_dims(const RunConfig& rc) {
    const auto rep = quantum::converge_dims(
        rc.engine, {rc.dims.n_cav, rc.dims.n_mol}, rc.dims.rtol);
    CsvWriter csv(out_path(rc, "converge_dims.csv"),
                  {"n_cav", "n_mol", "n_a", "p_eq7", "g2", "delta"},
                  rc.resolved());
    for (const auto& row : rep.table)
        csv.row(std::vector<double>{static_cast<double>(row.dims.n_cav),
                                    static_cast<double>(row.dims.n_mol),
                                    row.n_a, row.p_eq7, row.g2, row.delta});
    nlohmann::json j;
    j["schema"] = io::kSchemaVersion;
    j["converged"] = rep.converged;
    j["n_cav"] = rep.dims.n_cav;
    j["n_mol"] = rep.dims.n_mol;
    j["config"] = rc.resolved();
    write_json(out_path(rc, "converge_dims.json"), j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"molecular optomechanical heat-engine simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string point;
    long long workers = -1;

    const std::vector<std::string> names = {
        "classical-sim", "classical-sweep", "boundary",
        "quantum-steady", "quantum-sweep",  "phase-space",
        "wigner",        "normal-modes",    "converge-dims"};
    const std::vector<std::string> descs = {
        "integrate one classical trajectory and classify its regime",
        "regime/period/power map over (g_kappa, beta) plus boundary curves",
        "analytic operational-boundary curves beta(g_kappa)",
        "single steady-state solve with thermodynamic report",
        "steady-state thermodynamics over a parameter grid",
        "Husimi/source/flow fields and cavity Wigner at one point",
        "cavity Wigner function at one point",
        "two-mode hybridization tables and effective-parameter fits",
        "truncation refinement until observables settle"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "configuration file")
            ->required();
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--workers", workers, "worker thread count");
        sub->add_option("--point", point,
                        "comma-separated key=value parameter overrides");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig rc = RunConfig::from_file(config_path);
        if (!out_dir.empty()) rc.out_dir = out_dir;
        if (workers >= 0) rc.workers = static_cast<std::size_t>(workers);
        rc.apply_point_overrides(point);
        rc.engine.validate();

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "classical-sim") return cmd_classical_sim(rc);
        if (cmd == "classical-sweep") return cmd_classical_sweep(rc);
        if (cmd == "boundary") return cmd_boundary(rc);
        if (cmd == "quantum-steady") return cmd_quantum_steady(rc);
        if (cmd == "quantum-sweep") return cmd_quantum_sweep(rc);
        if (cmd == "phase-space") return cmd_phase_space(rc);
        if (cmd == "wigner") return cmd_wigner(rc);
        if (cmd == "normal-modes") return cmd_normal_modes(rc);
        if (cmd == "converge-dims") return cmd_converge_dims(rc);
        throw ConfigError("unknown subcommand " + cmd);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
