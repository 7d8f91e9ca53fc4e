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

#include <fstream>
#include <string>
#include <vector>

namespace ohe::io {

inline constexpr const char* kSchemaVersion = "ohe-1";

// CSV with a fixed column order, a '#'-prefixed header embedding the
// schema version and the full resolved configuration, and %.12g number
// formatting so identical runs produce byte-identical files.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              const std::string& resolved_config);

    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& cells);

    static std::string num(double v);

  private:
    std::ofstream out_;
    std::size_t columns_ = 0;
    std::string path_;
};

// JSON sidecar describing grid axes and run metadata.
void write_axes_sidecar(const std::string& path,
                        const std::string& resolved_config,
                        const std::vector<std::pair<std::string,
                                                    std::vector<double>>>&
                            axes);

void ensure_directory(const std::string& path);

}  // namespace ohe::io
