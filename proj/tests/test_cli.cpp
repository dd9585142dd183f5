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
//
// End-to-end tests of the installed binary, driven through std::system.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "ulsim/bayes.hpp"
#include "ulsim/config.hpp"
#include "ulsim/outage.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

struct CliResult
{
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path)
{
    std::ifstream f(path, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), "cannot open " << path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& arg_line)
{
    static int counter = 0;
    const fs::path out_path = "/tmp/ulsim_cli_stdout_" + std::to_string(++counter);
    const fs::path err_path = "/tmp/ulsim_cli_stderr_" + std::to_string(counter);
    const std::string cmd = std::string(ULSIM_CLI_PATH) + " " + arg_line + " >" +
                            out_path.string() + " 2>" + err_path.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return r;
}

// Scratch directory with automatic cleanup.
struct TempDir
{
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::path("/tmp") / ("ulsim_cli_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    f << content;
}

// A configuration that keeps the full pipeline in unit-test time.
const char* kTinyConfig = R"({
  "n_antennas": 4,
  "k_u": 2,
  "n_drops": 100,
  "m_small_scale": 2,
  "seed": 321
})";

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("help and version succeed, bad usage exits 1")
{
    const CliResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("sinr-cdf") != std::string::npos);
    CHECK(help.out.find("baseline-curve") != std::string::npos);

    const CliResult version = run_cli("--version");
    CHECK(version.exit_code == 0);
    CHECK(version.out.find("ulsim") != std::string::npos);

    CHECK(run_cli("").exit_code == 1);              // a subcommand is required
    CHECK(run_cli("frobnicate").exit_code == 1);    // unknown subcommand
    CHECK(run_cli("fit").exit_code == 1);           // missing required --samples
    CHECK(run_cli("sinr-cdf --bogus-flag").exit_code == 1);
}

TEST_CASE("fit computes the moment-matched parameters of a sample file")
{
    TempDir dir("fit");
    write_file(dir.path / "samples.txt", "# three samples\n1.0\n2.0\n3.0\n");
    const CliResult r = run_cli("fit --samples " + (dir.path / "samples.txt").string() +
                                " --out " + dir.path.string());
    REQUIRE(r.exit_code == 0);

    const json fit = json::parse(slurp(dir.path / "fit.json"));
    CHECK(fit.at("mu") == 2.0);
    CHECK(fit.at("v") == 1.0);
    CHECK(fit.at("alpha") == 6.0); // mu^2/v + 2
    CHECK(fit.at("beta") == 10.0); // (mu^2/v + 1) mu
    CHECK(fit.at("manifest") == "manifest.json");

    const json manifest = json::parse(slurp(dir.path / "manifest.json"));
    CHECK(manifest.at("command") == "fit");
    CHECK(manifest.at("outputs") == json::array({"fit.json"}));
}

TEST_CASE("fit distinguishes configuration errors from numerical ones")
{
    TempDir dir("fit_err");
    CHECK(run_cli("fit --samples /nonexistent/samples.txt --out " + dir.path.string())
              .exit_code == 2);

    write_file(dir.path / "one.txt", "1.5\n");
    CHECK(run_cli("fit --samples " + (dir.path / "one.txt").string() + " --out " +
                  dir.path.string())
              .exit_code == 3);

    write_file(dir.path / "flat.txt", "2.0\n2.0\n2.0\n");
    const CliResult flat = run_cli("fit --samples " + (dir.path / "flat.txt").string() +
                                   " --out " + dir.path.string());
    CHECK(flat.exit_code == 3);
    CHECK(flat.err.find("numerical error") != std::string::npos);

    write_file(dir.path / "neg.txt", "1.0\n-2.0\n");
    CHECK(run_cli("fit --samples " + (dir.path / "neg.txt").string() + " --out " +
                  dir.path.string())
              .exit_code == 2);
}

TEST_CASE("rate reproduces the library decision from fit and terms files")
{
    TempDir dir("rate");
    write_file(dir.path / "fit.json", R"({"alpha": 4.0, "beta": 6.0})");
    write_file(dir.path / "terms.json",
               R"({"ds_sq": 2.0, "iusi_n": 0.3, "noise_eff": 0.7})");
    const CliResult r = run_cli("rate --fit " + (dir.path / "fit.json").string() + " --terms " +
                                (dir.path / "terms.json").string() + " --epsilon 0.1 --out " +
                                dir.path.string());
    REQUIRE(r.exit_code == 0);

    ulsim::UatfTerms terms;
    terms.ds_sq = 2.0;
    terms.iusi_n = 0.3;
    terms.noise_eff = 0.7;
    const ulsim::SystemConfig cfg;
    const ulsim::RateDecision want =
        ulsim::epsilon_outage_rate(terms, ulsim::InverseGammaParams{4.0, 6.0}, 0.1, cfg);

    const json rate = json::parse(slurp(dir.path / "rate.json"));
    CHECK(rate.at("epsilon") == 0.1);
    CHECK(rate.at("threshold_T").get<double>() ==
          doctest::Approx(want.threshold_T).epsilon(1e-12));
    CHECK(rate.at("se").get<double>() == doctest::Approx(want.se).epsilon(1e-12));
    CHECK(rate.at("manifest") == "manifest.json");
}

TEST_CASE("rate rejects out-of-range epsilon and incomplete inputs")
{
    TempDir dir("rate_err");
    write_file(dir.path / "fit.json", R"({"alpha": 4.0, "beta": 6.0})");
    write_file(dir.path / "terms.json", R"({"ds_sq": 2.0, "iusi_n": 0.3})");
    const std::string base = "rate --fit " + (dir.path / "fit.json").string() + " --terms " +
                             (dir.path / "terms.json").string();

    CHECK(run_cli(base + " --epsilon 1.0 --out " + dir.path.string()).exit_code == 1);
    CHECK(run_cli(base + " --epsilon 0.0 --out " + dir.path.string()).exit_code == 1);

    const CliResult missing =
        run_cli(base + " --epsilon 0.1 --out " + dir.path.string());
    CHECK(missing.exit_code == 2); // terms.json lacks noise_eff
    CHECK(missing.err.find("noise_eff") != std::string::npos);

    CHECK(run_cli("rate --fit /nonexistent/fit.json --terms " +
                  (dir.path / "terms.json").string() + " --epsilon 0.1 --out " +
                  dir.path.string())
              .exit_code == 2);
}

TEST_CASE("configuration problems exit with code 2 and name the key")
{
    TempDir dir("cfg_err");
    write_file(dir.path / "bad.json", R"({"tau_p": 300})");
    const CliResult r = run_cli("sinr-cdf --config " + (dir.path / "bad.json").string() +
                                " --out " + dir.path.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("tau_p") != std::string::npos);

    CHECK(run_cli("sinr-cdf --config /nonexistent/cfg.json --out " + dir.path.string())
              .exit_code == 2);
}

TEST_CASE("unknown config keys warn on stderr but do not fail the run")
{
    TempDir dir("warn");
    write_file(dir.path / "cfg.json",
               std::string(kTinyConfig).insert(1, "\n  \"typo_key\": 1,"));
    const CliResult r = run_cli("sinr-cdf --config " + (dir.path / "cfg.json").string() +
                                " --out " + dir.path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(r.err.find("typo_key") != std::string::npos);
    CHECK(fs::exists(dir.path / "sinr_cdf.csv"));
}

TEST_CASE("sinr-cdf output is byte-identical across reruns and thread counts")
{
    TempDir dir("repro");
    write_file(dir.path / "cfg.json", kTinyConfig);
    const std::string cfg_arg = " --config " + (dir.path / "cfg.json").string();

    const fs::path out_a = dir.path / "a";
    const fs::path out_b = dir.path / "b";
    const fs::path out_c = dir.path / "c";
    REQUIRE(run_cli("sinr-cdf" + cfg_arg + " --threads 1 --out " + out_a.string())
                .exit_code == 0);
    REQUIRE(run_cli("sinr-cdf" + cfg_arg + " --threads 1 --out " + out_b.string())
                .exit_code == 0);
    REQUIRE(run_cli("sinr-cdf" + cfg_arg + " --threads 3 --out " + out_c.string())
                .exit_code == 0);

    const std::string csv_a = slurp(out_a / "sinr_cdf.csv");
    CHECK(csv_a == slurp(out_b / "sinr_cdf.csv"));
    CHECK(csv_a == slurp(out_c / "sinr_cdf.csv"));

    // Structure: manifest reference, header, then one row per held-out drop.
    std::istringstream lines(csv_a);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "# manifest: manifest.json");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "threshold_db,empirical_cdf,analytical_cdf");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 50); // 100 drops, calibration fraction 0.5

    // A different seed must change the data.
    const fs::path out_d = dir.path / "d";
    REQUIRE(run_cli("sinr-cdf" + cfg_arg + " --seed 999 --out " + out_d.string())
                .exit_code == 0);
    CHECK(slurp(out_d / "sinr_cdf.csv") != csv_a);
    const json manifest = json::parse(slurp(out_d / "manifest.json"));
    CHECK(manifest.at("seed") == 999);
    CHECK(manifest.at("command") == "sinr-cdf");
}

TEST_CASE("outage-curve and baseline-curve write one row per sweep point")
{
    TempDir dir("curves");
    write_file(dir.path / "cfg.json", kTinyConfig);
    const std::string cfg_arg = " --config " + (dir.path / "cfg.json").string();

    REQUIRE(run_cli("outage-curve" + cfg_arg + " --out " + dir.path.string()).exit_code == 0);
    const std::string outage_csv = slurp(dir.path / "outage_curve.csv");
    std::istringstream lines(outage_csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "# manifest: manifest.json");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "epsilon,se_model,empirical_outage");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 4); // default epsilons

    REQUIRE(run_cli("baseline-curve" + cfg_arg + " --out " + dir.path.string()).exit_code == 0);
    const std::string baseline_csv = slurp(dir.path / "baseline_curve.csv");
    std::istringstream blines(baseline_csv);
    REQUIRE(std::getline(blines, line));
    CHECK(line == "# manifest: manifest.json");
    REQUIRE(std::getline(blines, line));
    CHECK(line == "margin,se,empirical_outage");
    rows = 0;
    while (std::getline(blines, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 3); // default margins
}

TEST_SUITE_END();
