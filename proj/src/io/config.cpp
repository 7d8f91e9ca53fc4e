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

#include "ohe/io/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ohe::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text,
                                    const std::string& origin) {
    ConfigFile cf;
    cf.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": empty section name");
            cf.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": empty key");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": key outside any [section]");
        cf.sections_[section][key] = Entry{value, lineno};
    }
    return cf;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second.value;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key, double fallback) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return fallback;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(k->second.value, &pos);
        if (pos != k->second.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ":" + std::to_string(k->second.line) +
                          ": field [" + section + "] " + key +
                          " is not a number: '" + k->second.value + "'");
    }
}

std::size_t ConfigFile::get_size(const std::string& section,
                                 const std::string& key,
                                 std::size_t fallback) const {
    const double v = get_double(section, key,
                                static_cast<double>(fallback));
    if (v < 0.0 || v != std::floor(v))
        throw ConfigError("field [" + section + "] " + key +
                          " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return fallback;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return fallback;
    const std::string& v = k->second.value;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(origin_ + ":" + std::to_string(k->second.line) +
                      ": field [" + section + "] " + key +
                      " is not a boolean: '" + v + "'");
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
    sections_[section][key] = Entry{value, 0};
}

std::string ConfigFile::serialize() const {
    std::ostringstream out;
    for (const auto& [section, entries] : sections_) {
        out << "[" << section << "]\n";
        for (const auto& [key, entry] : entries)
            out << key << " = " << entry.value << "\n";
        out << "\n";
    }
    return out.str();
}

void ConfigFile::check_known(
    const std::map<std::string, std::vector<std::string>>& known) const {
    for (const auto& [section, entries] : sections_) {
        const auto s = known.find(section);
        if (s == known.end())
            throw ConfigError(origin_ + ": unknown section [" + section + "]");
        for (const auto& [key, entry] : entries) {
            if (std::find(s->second.begin(), s->second.end(), key) ==
                s->second.end())
                throw ConfigError(origin_ + ":" +
                                  std::to_string(entry.line) +
                                  ": unknown key '" + key + "' in [" +
                                  section + "]");
        }
    }
}

std::vector<double> SweepSpec::values1() const {
    std::vector<double> v;
    for (std::size_t i = 0; i < count1; ++i)
        v.push_back(count1 == 1
                        ? min1
                        : min1 + (max1 - min1) * static_cast<double>(i) /
                                     static_cast<double>(count1 - 1));
    return v;
}

std::vector<double> SweepSpec::values2() const {
    std::vector<double> v;
    for (std::size_t i = 0; i < count2; ++i)
        v.push_back(count2 == 1
                        ? min2
                        : min2 + (max2 - min2) * static_cast<double>(i) /
                                     static_cast<double>(count2 - 1));
    return v;
}

void set_engine_param(model::EngineParams& p, const std::string& name,
                      double value) {
    if (name == "g_kappa") p.g_kappa = value;
    else if (name == "beta") p.beta = value;
    else if (name == "g_omega") p.g_omega = value;
    else if (name == "theta") p.theta = value;
    else if (name == "n_hot") p.n_hot = value;
    else if (name == "n_cold") p.n_cold = value;
    else if (name == "n_th") p.n_th = value;
    else if (name == "kappa0") p.kappa0 = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "omega_a") p.omega_a = value;
    else if (name == "barrier_width") p.barrier_width = value;
    else
        throw ConfigError("unknown engine parameter: " + name);
}

double get_engine_param(const model::EngineParams& p,
                        const std::string& name) {
    if (name == "g_kappa") return p.g_kappa;
    if (name == "beta") return p.beta;
    if (name == "g_omega") return p.g_omega;
    if (name == "theta") return p.theta;
    if (name == "n_hot") return p.n_hot;
    if (name == "n_cold") return p.n_cold;
    if (name == "n_th") return p.n_th;
    if (name == "kappa0") return p.kappa0;
    if (name == "gamma") return p.gamma;
    if (name == "omega_a") return p.omega_a;
    if (name == "barrier_width") return p.barrier_width;
    throw ConfigError("unknown engine parameter: " + name);
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_config(ConfigFile::parse_file(path));
}

RunConfig RunConfig::from_config(const ConfigFile& cf) {
    static const std::map<std::string, std::vector<std::string>> known = {
        {"engine",
         {"omega_m", "mass", "theta", "beta", "barrier_width", "g_omega",
          "g_kappa", "kappa0", "n_hot", "n_cold", "gamma", "n_th", "omega_a",
          "hbar"}},
        {"dims", {"n_cav", "n_mol", "auto", "rtol"}},
        {"sweep",
         {"axis1", "axis2", "min1", "max1", "min2", "max2", "count1",
          "count2"}},
        {"grid",
         {"n_r", "n_x", "n_phi", "r_max", "x_min", "x_max", "wigner_extent",
          "wigner_points"}},
        {"classical",
         {"t_max", "dt", "store_every", "x_probe_min", "x_probe_max",
          "beta_max", "n0", "x0"}},
        {"normalmodes",
         {"omega_a_bare", "omega_b_bare", "g_a", "g_b", "g", "kappa_a",
          "kappa_b", "n_a", "n_b", "window_lo", "window_hi", "samples",
          "table_lo", "table_hi", "table_points"}},
        {"run", {"out_dir", "workers"}},
    };
    cf.check_known(known);

    RunConfig rc;
    auto& e = rc.engine;
    e.omega_m = cf.get_double("engine", "omega_m", e.omega_m);
    e.mass = cf.get_double("engine", "mass", e.mass);
    e.theta = cf.get_double("engine", "theta", e.theta);
    e.beta = cf.get_double("engine", "beta", e.beta);
    e.barrier_width = cf.get_double("engine", "barrier_width",
                                    e.barrier_width);
    e.g_omega = cf.get_double("engine", "g_omega", e.g_omega);
    e.g_kappa = cf.get_double("engine", "g_kappa", e.g_kappa);
    e.kappa0 = cf.get_double("engine", "kappa0", e.kappa0);
    e.n_hot = cf.get_double("engine", "n_hot", e.n_hot);
    e.n_cold = cf.get_double("engine", "n_cold", e.n_cold);
    e.gamma = cf.get_double("engine", "gamma", e.gamma);
    e.n_th = cf.get_double("engine", "n_th", e.n_th);
    e.omega_a = cf.get_double("engine", "omega_a", e.omega_a);
    e.hbar = cf.get_double("engine", "hbar", e.hbar);
    e.validate();

    rc.dims.n_cav = cf.get_size("dims", "n_cav", rc.dims.n_cav);
    rc.dims.n_mol = cf.get_size("dims", "n_mol", rc.dims.n_mol);
    rc.dims.auto_dims = cf.get_bool("dims", "auto", rc.dims.auto_dims);
    rc.dims.rtol = cf.get_double("dims", "rtol", rc.dims.rtol);
    if (rc.dims.n_cav < 2 || rc.dims.n_mol < 2)
        throw ConfigError("dims: truncations must be >= 2");
    if (!(rc.dims.rtol > 0.0)) throw ConfigError("dims: rtol must be > 0");

    rc.sweep.axis1 = cf.get_string("sweep", "axis1", "g_kappa");
    rc.sweep.axis2 = cf.get_string("sweep", "axis2", "beta");
    rc.sweep.min1 = cf.get_double("sweep", "min1", 0.5);
    rc.sweep.max1 = cf.get_double("sweep", "max1", 9.0);
    rc.sweep.count1 = cf.get_size("sweep", "count1", 5);
    rc.sweep.min2 = cf.get_double("sweep", "min2", 0.3);
    rc.sweep.max2 = cf.get_double("sweep", "max2", 3.0);
    rc.sweep.count2 = cf.get_size("sweep", "count2", 5);
    for (const auto* axis : {&rc.sweep.axis1, &rc.sweep.axis2}) {
        model::EngineParams probe = rc.engine;
        set_engine_param(probe, *axis, get_engine_param(probe, *axis));
    }
    if (rc.sweep.count1 < 1 || rc.sweep.count2 < 1)
        throw ConfigError("sweep: point counts must be >= 1");
    for (const double v : {rc.sweep.min1, rc.sweep.max1, rc.sweep.min2,
                           rc.sweep.max2})
        if (!std::isfinite(v)) throw ConfigError("sweep: range not finite");

    rc.grid.n_r = cf.get_size("grid", "n_r", rc.grid.n_r);
    rc.grid.n_x = cf.get_size("grid", "n_x", rc.grid.n_x);
    rc.grid.n_phi = cf.get_size("grid", "n_phi", rc.grid.n_phi);
    rc.grid.r_max = cf.get_double("grid", "r_max", rc.grid.r_max);
    rc.grid.x_min = cf.get_double("grid", "x_min", rc.grid.x_min);
    rc.grid.x_max = cf.get_double("grid", "x_max", rc.grid.x_max);
    rc.grid.wigner_extent =
        cf.get_double("grid", "wigner_extent", rc.grid.wigner_extent);
    rc.grid.wigner_points =
        cf.get_size("grid", "wigner_points", rc.grid.wigner_points);

    rc.classical.t_max = cf.get_double("classical", "t_max",
                                       rc.classical.t_max);
    rc.classical.dt = cf.get_double("classical", "dt", rc.classical.dt);
    rc.classical.store_every =
        cf.get_size("classical", "store_every", rc.classical.store_every);
    rc.classical.x_probe_min =
        cf.get_double("classical", "x_probe_min", rc.classical.x_probe_min);
    rc.classical.x_probe_max =
        cf.get_double("classical", "x_probe_max", rc.classical.x_probe_max);
    rc.classical.beta_max =
        cf.get_double("classical", "beta_max", rc.classical.beta_max);
    rc.classical.n0 = cf.get_double("classical", "n0", rc.classical.n0);
    rc.classical.x0 = cf.get_double("classical", "x0", rc.classical.x0);

    auto& nm = rc.normal.params;
    nm.omega_a_bare =
        cf.get_double("normalmodes", "omega_a_bare", nm.omega_a_bare);
    nm.omega_b_bare =
        cf.get_double("normalmodes", "omega_b_bare", nm.omega_b_bare);
    nm.g_a = cf.get_double("normalmodes", "g_a", nm.g_a);
    nm.g_b = cf.get_double("normalmodes", "g_b", nm.g_b);
    nm.g = cf.get_double("normalmodes", "g", nm.g);
    nm.kappa_a = cf.get_double("normalmodes", "kappa_a", nm.kappa_a);
    nm.kappa_b = cf.get_double("normalmodes", "kappa_b", nm.kappa_b);
    nm.n_a = cf.get_double("normalmodes", "n_a", nm.n_a);
    nm.n_b = cf.get_double("normalmodes", "n_b", nm.n_b);
    rc.normal.window_lo =
        cf.get_double("normalmodes", "window_lo", rc.normal.window_lo);
    rc.normal.window_hi =
        cf.get_double("normalmodes", "window_hi", rc.normal.window_hi);
    rc.normal.samples = cf.get_size("normalmodes", "samples",
                                    rc.normal.samples);
    rc.normal.table_lo =
        cf.get_double("normalmodes", "table_lo", rc.normal.table_lo);
    rc.normal.table_hi =
        cf.get_double("normalmodes", "table_hi", rc.normal.table_hi);
    rc.normal.table_points =
        cf.get_size("normalmodes", "table_points", rc.normal.table_points);

    rc.out_dir = cf.get_string("run", "out_dir", rc.out_dir);
    rc.workers = cf.get_size("run", "workers", rc.workers);
    return rc;
}

void RunConfig::apply_point_overrides(const std::string& point) {
    if (point.empty()) return;
    std::istringstream in(point);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--point: expected key=value, got '" + item +
                              "'");
        const std::string key = trim(item.substr(0, eq));
        const std::string val = trim(item.substr(eq + 1));
        try {
            if (key == "n_cav") {
                dims.n_cav = static_cast<std::size_t>(std::stoul(val));
            } else if (key == "n_mol") {
                dims.n_mol = static_cast<std::size_t>(std::stoul(val));
            } else {
                set_engine_param(engine, key, std::stod(val));
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("--point: bad value for " + key + ": '" + val +
                              "'");
        }
    }
    if (dims.n_cav < 2 || dims.n_mol < 2)
        throw ConfigError("--point: truncations must be >= 2");
    engine.validate();
}

std::string RunConfig::resolved() const {
    ConfigFile cf;
    cf.set("engine", "omega_m", fmt_double(engine.omega_m));
    cf.set("engine", "mass", fmt_double(engine.mass));
    cf.set("engine", "theta", fmt_double(engine.theta));
    cf.set("engine", "beta", fmt_double(engine.beta));
    cf.set("engine", "barrier_width", fmt_double(engine.barrier_width));
    cf.set("engine", "g_omega", fmt_double(engine.g_omega));
    cf.set("engine", "g_kappa", fmt_double(engine.g_kappa));
    cf.set("engine", "kappa0", fmt_double(engine.kappa0));
    cf.set("engine", "n_hot", fmt_double(engine.n_hot));
    cf.set("engine", "n_cold", fmt_double(engine.n_cold));
    cf.set("engine", "gamma", fmt_double(engine.gamma));
    cf.set("engine", "n_th", fmt_double(engine.n_th));
    cf.set("engine", "omega_a", fmt_double(engine.omega_a));
    cf.set("engine", "hbar", fmt_double(engine.hbar));
    cf.set("dims", "n_cav", std::to_string(dims.n_cav));
    cf.set("dims", "n_mol", std::to_string(dims.n_mol));
    cf.set("dims", "auto", dims.auto_dims ? "true" : "false");
    cf.set("dims", "rtol", fmt_double(dims.rtol));
    cf.set("sweep", "axis1", sweep.axis1);
    cf.set("sweep", "axis2", sweep.axis2);
    cf.set("sweep", "min1", fmt_double(sweep.min1));
    cf.set("sweep", "max1", fmt_double(sweep.max1));
    cf.set("sweep", "count1", std::to_string(sweep.count1));
    cf.set("sweep", "min2", fmt_double(sweep.min2));
    cf.set("sweep", "max2", fmt_double(sweep.max2));
    cf.set("sweep", "count2", std::to_string(sweep.count2));
    cf.set("grid", "n_r", std::to_string(grid.n_r));
    cf.set("grid", "n_x", std::to_string(grid.n_x));
    cf.set("grid", "n_phi", std::to_string(grid.n_phi));
    cf.set("grid", "r_max", fmt_double(grid.r_max));
    cf.set("grid", "x_min", fmt_double(grid.x_min));
    cf.set("grid", "x_max", fmt_double(grid.x_max));
    cf.set("grid", "wigner_extent", fmt_double(grid.wigner_extent));
    cf.set("grid", "wigner_points", std::to_string(grid.wigner_points));
    cf.set("classical", "t_max", fmt_double(classical.t_max));
    cf.set("classical", "dt", fmt_double(classical.dt));
    cf.set("classical", "store_every", std::to_string(classical.store_every));
    cf.set("classical", "x_probe_min", fmt_double(classical.x_probe_min));
    cf.set("classical", "x_probe_max", fmt_double(classical.x_probe_max));
    cf.set("classical", "beta_max", fmt_double(classical.beta_max));
    cf.set("classical", "n0", fmt_double(classical.n0));
    cf.set("classical", "x0", fmt_double(classical.x0));
    cf.set("normalmodes", "omega_a_bare", fmt_double(normal.params.omega_a_bare));
    cf.set("normalmodes", "omega_b_bare", fmt_double(normal.params.omega_b_bare));
    cf.set("normalmodes", "g_a", fmt_double(normal.params.g_a));
    cf.set("normalmodes", "g_b", fmt_double(normal.params.g_b));
    cf.set("normalmodes", "g", fmt_double(normal.params.g));
    cf.set("normalmodes", "kappa_a", fmt_double(normal.params.kappa_a));
    cf.set("normalmodes", "kappa_b", fmt_double(normal.params.kappa_b));
    cf.set("normalmodes", "n_a", fmt_double(normal.params.n_a));
    cf.set("normalmodes", "n_b", fmt_double(normal.params.n_b));
    cf.set("normalmodes", "window_lo", fmt_double(normal.window_lo));
    cf.set("normalmodes", "window_hi", fmt_double(normal.window_hi));
    cf.set("normalmodes", "samples", std::to_string(normal.samples));
    cf.set("normalmodes", "table_lo", fmt_double(normal.table_lo));
    cf.set("normalmodes", "table_hi", fmt_double(normal.table_hi));
    cf.set("normalmodes", "table_points", std::to_string(normal.table_points));
    cf.set("run", "out_dir", out_dir);
    cf.set("run", "workers", std::to_string(workers));
    return cf.serialize();
}

}  // namespace ohe::io
