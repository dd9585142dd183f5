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

#include "ulsim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "ulsim/errors.hpp"

namespace ulsim
{

namespace
{

using nlohmann::json;

double require_number(const json& value, const std::string& key)
{
    if (!value.is_number())
        throw ConfigError(key + ": expected a number");
    return value.get<double>();
}

int require_integer(const json& value, const std::string& key)
{
    if (!value.is_number_integer())
        throw ConfigError(key + ": expected an integer");
    const auto v = value.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(key + ": integer out of range");
    return static_cast<int>(v);
}

std::uint64_t require_seed(const json& value, const std::string& key)
{
    if (value.is_number_unsigned())
        return value.get<std::uint64_t>();
    if (value.is_number_integer())
    {
        const auto v = value.get<std::int64_t>();
        if (v < 0)
            throw ConfigError(key + ": must be non-negative");
        return static_cast<std::uint64_t>(v);
    }
    throw ConfigError(key + ": expected an integer");
}

std::vector<double> require_number_array(const json& value, const std::string& key)
{
    if (!value.is_array())
        throw ConfigError(key + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (const json& item : value)
    {
        if (!item.is_number())
            throw ConfigError(key + ": expected an array of numbers");
        out.push_back(item.get<double>());
    }
    return out;
}

} // namespace

ParsedConfig parse_config_json(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw ConfigError("config: document root must be a JSON object");

    ParsedConfig parsed;
    ExperimentPlan& plan = parsed.plan;
    for (const auto& [key, value] : doc.items())
    {
        if (key == "bandwidth_hz")
            plan.cfg.bandwidth_hz = require_number(value, key);
        else if (key == "n_antennas")
            plan.cfg.n_antennas = require_integer(value, key);
        else if (key == "pathloss_exponent")
            plan.cfg.pathloss_exponent = require_number(value, key);
        else if (key == "tx_power_mw")
            plan.cfg.tx_power_mw = require_number(value, key);
        else if (key == "noise_power_dbm")
            plan.cfg.noise_power_dbm = require_number(value, key);
        else if (key == "tau_c")
            plan.cfg.tau_c = require_integer(value, key);
        else if (key == "tau_p")
            plan.cfg.tau_p = require_integer(value, key);
        else if (key == "seed")
            plan.cfg.seed = require_seed(value, key);
        else if (key == "r_desired_m")
            plan.r_desired_m = require_number(value, key);
        else if (key == "k_u")
            plan.k_u = require_integer(value, key);
        else if (key == "scheme")
        {
            if (!value.is_string())
                throw ConfigError("scheme: expected \"MR\" or \"RZF\"");
            const std::string s = value.get<std::string>();
            if (s == "MR")
                plan.scheme = CombinerScheme::MR;
            else if (s == "RZF")
                plan.scheme = CombinerScheme::RZF;
            else
                throw ConfigError("scheme: expected \"MR\" or \"RZF\"");
        }
        else if (key == "n_drops")
            plan.n_drops = require_integer(value, key);
        else if (key == "m_small_scale")
            plan.m_small_scale = require_integer(value, key);
        else if (key == "calibration_fraction")
            plan.calibration_fraction = require_number(value, key);
        else if (key == "epsilons")
            plan.epsilons = require_number_array(value, key);
        else if (key == "margins")
            plan.margins = require_number_array(value, key);
        else
            parsed.warnings.push_back("unknown key \"" + key + "\" ignored");
    }
    plan.validate();
    return parsed;
}

ParsedConfig parse_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("config: cannot open " + path);
    json doc;
    try
    {
        doc = json::parse(f, nullptr, true, true); // allow // and /* */ comments
    }
    catch (const json::exception& e)
    {
        throw ConfigError("config: " + std::string(e.what()));
    }
    return parse_config_json(doc);
}

std::string format_double(double value)
{
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv_file(const std::string& path, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("output: cannot write " + path);

    f << "# manifest: " << kManifestFileName << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        f << (i ? "," : "") << columns[i];
    f << "\n";
    for (const std::vector<double>& row : rows)
    {
        if (row.size() != columns.size())
            throw std::invalid_argument("write_csv_file: row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i)
            f << (i ? "," : "") << format_double(row[i]);
        f << "\n";
    }
    f.flush();
    if (!f)
        throw ConfigError("output: write failed for " + path);
}

std::vector<double> read_sample_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("samples: cannot open " + path);

    std::vector<double> out;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line))
    {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        std::size_t e = line.find_last_not_of(" \t\r") + 1;

        double value = 0.0;
        const char* begin = line.data() + b;
        const char* end = line.data() + e;
        const auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc() || res.ptr != end)
            throw ConfigError("samples: line " + std::to_string(lineno) + ": invalid number");
        if (!(value > 0.0) || !std::isfinite(value))
            throw ConfigError("samples: line " + std::to_string(lineno) +
                              ": value must be positive");
        out.push_back(value);
    }
    return out;
}

void write_manifest(const RunManifest& manifest, const std::string& path)
{
    nlohmann::ordered_json doc;
    doc["command"] = manifest.command;
    doc["config_path"] = manifest.config_path;
    doc["seed"] = manifest.seed;
    doc["output_dir"] = manifest.output_dir;
    doc["version"] = manifest.version;
    doc["duration_seconds"] = manifest.duration_seconds;
    doc["outputs"] = manifest.outputs;

    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("output: cannot write " + path);
    f << doc.dump(2) << "\n";
    f.flush();
    if (!f)
        throw ConfigError("output: write failed for " + path);
}

} // namespace ulsim
