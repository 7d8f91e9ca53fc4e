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

#include "ohe/io/table.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "ohe/errors.hpp"

namespace ohe::io {

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::string& resolved_config)
    : out_(path), columns_(columns.size()), path_(path) {
    if (!out_) throw ConfigError("cannot open output file: " + path);
    out_ << "# schema: " << kSchemaVersion << "\n";
    out_ << "# config:\n";
    std::istringstream cfg(resolved_config);
    std::string line;
    while (std::getline(cfg, line)) out_ << "#   " << line << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw ConfigError("csv row width mismatch in " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (const double v : cells) s.push_back(num(v));
    row(s);
}

void write_axes_sidecar(
    const std::string& path, const std::string& resolved_config,
    const std::vector<std::pair<std::string, std::vector<double>>>& axes) {
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["config"] = resolved_config;
    for (const auto& [name, values] : axes) j["axes"][name] = values;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open sidecar file: " + path);
    out << j.dump(2) << "\n";
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec)
        throw ConfigError("cannot create output directory " + path + ": " +
                          ec.message());
}

}  // namespace ohe::io
