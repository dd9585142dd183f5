// SPDX-License-Identifier: Apache-2.0
//
// ulsim - MU-MIMO uplink interference and outage simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ULSIM_IO_HPP
#define ULSIM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ulsim/experiments.hpp"

namespace ulsim
{

inline constexpr const char* kVersionString = "ulsim 1.0.0";

// Name of the per-run manifest file; every CSV references it in its leading
// comment line.
inline constexpr const char* kManifestFileName = "manifest.json";

struct ParsedConfig
{
    ExperimentPlan plan;
    std::vector<std::string> warnings; // e.g. unknown keys, ignored
};

// Parse an experiment configuration.  Missing keys take the documented
// defaults; unknown keys produce warnings, not errors; malformed values raise
// ConfigError naming the offending key.  The returned plan has been validated.
ParsedConfig parse_config_json(const nlohmann::json& doc);
ParsedConfig parse_config_file(const std::string& path);

// Locale-independent decimal formatting: '.' separator, 17 significant
// digits, shortest general form.
std::string format_double(double value);

// Write a CSV file: one '#' comment line referencing the run manifest, the
// exact header, then the rows, all LF-terminated and formatted with
// format_double.  Reruns with identical data are byte-identical.
void write_csv_file(const std::string& path, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows);

// Read a newline-delimited sample file: one positive decimal per line, '#'
// starts a comment, blank lines ignored.  Invalid lines raise ConfigError
// with the line number.
std::vector<double> read_sample_file(const std::string& path);

// Bookkeeping for one CLI run.
struct RunManifest
{
    std::string command;
    std::string config_path; // empty when defaults were used
    std::uint64_t seed = 0;
    std::string output_dir;
    std::string version = kVersionString;
    double duration_seconds = 0.0;
    std::vector<std::string> outputs; // file names written by the run
};
void write_manifest(const RunManifest& manifest, const std::string& path);

} // namespace ulsim

#endif
