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

#include <map>
#include <string>
#include <vector>

#include "ohe/model/params.hpp"
#include "ohe/normalmodes/normalmodes.hpp"

namespace ohe::io {

// INI-style sections of key = value lines; '#' and ';' start comments.
// Unknown sections or keys are hard errors with line diagnostics, and the
// parsed form serializes back for the round-trip test and for embedding
// the resolved configuration into every output file.
class ConfigFile {
  public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text,
                                   const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    std::size_t get_size(const std::string& section, const std::string& key,
                         std::size_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;

    void set(const std::string& section, const std::string& key,
             const std::string& value);
    std::string serialize() const;

    // every (section, key) must appear in `known`; otherwise ConfigError
    void check_known(
        const std::map<std::string, std::vector<std::string>>& known) const;

  private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string origin_;
    // ordered for deterministic serialization
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

struct SweepSpec {
    std::string axis1, axis2;
    double min1 = 0.0, max1 = 0.0, min2 = 0.0, max2 = 0.0;
    std::size_t count1 = 1, count2 = 1;

    std::vector<double> values1() const;
    std::vector<double> values2() const;
};

struct RunConfig {
    model::EngineParams engine;
    struct Dims {
        std::size_t n_cav = 10;
        std::size_t n_mol = 20;
        bool auto_dims = false;
        double rtol = 1e-3;
    } dims;
    SweepSpec sweep;
    struct Grid {
        std::size_t n_r = 80;
        std::size_t n_x = 120;
        std::size_t n_phi = 64;
        double r_max = 0.0;  // 0: auto from the Fock-tail rule
        double x_min = -5.0;
        double x_max = 5.0;
        double wigner_extent = 0.0;  // 0: auto
        std::size_t wigner_points = 101;
    } grid;
    struct Classical {
        double t_max = 2000.0;
        double dt = 1e-3;
        std::size_t store_every = 10;
        double x_probe_min = -3.0;
        double x_probe_max = 3.0;
        double beta_max = 6.0;
        double n0 = 0.0;  // default initial state for classical-sim
        double x0 = -2.0;
    } classical;
    struct NormalModes {
        normalmodes::TwoModeParams params;
        double window_lo = -4.0;
        double window_hi = 4.0;
        std::size_t samples = 401;
        double table_lo = -20.0;
        double table_hi = 80.0;
        std::size_t table_points = 501;
    } normal;
    std::string out_dir = "out";
    std::size_t workers = 0;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_config(const ConfigFile& cf);

    // "key=value,key=value" overrides applied to engine/dims fields
    void apply_point_overrides(const std::string& point);

    // full resolved configuration, parseable by from_config
    std::string resolved() const;
};

// named access to sweepable engine parameters {g_kappa, beta, g_omega}
void set_engine_param(model::EngineParams& p, const std::string& name,
                      double value);
double get_engine_param(const model::EngineParams& p, const std::string& name);

}  // namespace ohe::io
