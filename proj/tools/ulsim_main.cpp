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
// Command-line front-end.  Exit codes: 0 success, 1 usage error, 2
// configuration/I-O error, 3 numerical error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ulsim/errors.hpp"
#include "ulsim/experiments.hpp"
#include "ulsim/io.hpp"
#include "ulsim/outage.hpp"

namespace
{

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonArgs
{
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool have_seed = false;
    int threads = 0;
};

ulsim::ParsedConfig load_plan(const CommonArgs& args)
{
    ulsim::ParsedConfig parsed;
    if (!args.config_path.empty())
        parsed = ulsim::parse_config_file(args.config_path);
    if (args.have_seed)
        parsed.plan.cfg.seed = args.seed;
    parsed.plan.validate();
    for (const std::string& w : parsed.warnings)
        std::cerr << "warning: " << w << "\n";
    return parsed;
}

fs::path prepare_output_dir(const std::string& out_dir)
{
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw ulsim::ConfigError("output: cannot create directory " + out_dir);
    return dir;
}

void finish_run(const CommonArgs& args, const std::string& command, std::uint64_t seed,
                const std::chrono::steady_clock::time_point& t0,
                const std::vector<std::string>& outputs)
{
    ulsim::RunManifest manifest;
    manifest.command = command;
    manifest.config_path = args.config_path;
    manifest.seed = seed;
    manifest.output_dir = args.out_dir;
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest.outputs = outputs;
    ulsim::write_manifest(manifest,
                          (fs::path(args.out_dir) / ulsim::kManifestFileName).string());
}

int run_experiment(const CommonArgs& args, const std::string& command)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ulsim::ParsedConfig parsed = load_plan(args);
    const ulsim::ExperimentPlan& plan = parsed.plan;

    int threads = args.threads;
    if (threads <= 0)
        threads = std::max(1u, std::thread::hardware_concurrency());

    const std::vector<ulsim::DropResult> results = ulsim::run_drops(plan, threads);
    const fs::path dir = prepare_output_dir(args.out_dir);

    std::string file_name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    if (command == "sinr-cdf")
    {
        const ulsim::SplitResults split =
            ulsim::split_results(results, plan.calibration_fraction);
        const ulsim::CalibrationFit fit = ulsim::calibrate(split.calibration);
        std::vector<double> sinrs;
        sinrs.reserve(split.heldout.size());
        for (const ulsim::DropResult& r : split.heldout)
            sinrs.push_back(r.sinr);
        std::sort(sinrs.begin(), sinrs.end());

        file_name = "sinr_cdf.csv";
        columns = {"threshold_db", "empirical_cdf", "analytical_cdf"};
        const double n = static_cast<double>(sinrs.size());
        for (std::size_t i = 0; i < sinrs.size(); ++i)
            rows.push_back({10.0 * std::log10(sinrs[i]), static_cast<double>(i + 1) / n,
                            ulsim::analytical_sinr_cdf_at(fit, sinrs[i])});
    }
    else if (command == "outage-curve")
    {
        file_name = "outage_curve.csv";
        columns = {"epsilon", "se_model", "empirical_outage"};
        for (const ulsim::OutageCurvePoint& p : ulsim::epsilon_outage_curve(plan, results))
            rows.push_back({p.epsilon, p.se_model, p.empirical_outage});
    }
    else // baseline-curve
    {
        file_name = "baseline_curve.csv";
        columns = {"margin", "se", "empirical_outage"};
        for (const ulsim::BaselineCurvePoint& p : ulsim::baseline_curve(plan, results))
            rows.push_back({p.margin, p.se, p.empirical_outage});
    }

    ulsim::write_csv_file((dir / file_name).string(), columns, rows);
    finish_run(args, command, plan.cfg.seed, t0, {file_name});
    return 0;
}

int run_fit(const CommonArgs& args, const std::string& samples_path)
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> samples = ulsim::read_sample_file(samples_path);
    const ulsim::SampleStats stats = ulsim::sample_stats(samples);
    const ulsim::InverseGammaParams ig = ulsim::fit_inverse_gamma(stats);

    const fs::path dir = prepare_output_dir(args.out_dir);
    nlohmann::ordered_json doc;
    doc["mu"] = stats.mu;
    doc["v"] = stats.v;
    doc["alpha"] = ig.alpha;
    doc["beta"] = ig.beta;
    doc["manifest"] = ulsim::kManifestFileName;
    std::ofstream f(dir / "fit.json", std::ios::binary);
    if (!f)
        throw ulsim::ConfigError("output: cannot write fit.json");
    f << doc.dump(2) << "\n";
    f.flush();
    if (!f)
        throw ulsim::ConfigError("output: write failed for fit.json");

    finish_run(args, "fit", 0, t0, {"fit.json"});
    return 0;
}

json load_json_file(const std::string& path, const std::string& what)
{
    std::ifstream f(path);
    if (!f)
        throw ulsim::ConfigError(what + ": cannot open " + path);
    try
    {
        return json::parse(f, nullptr, true, true);
    }
    catch (const json::exception& e)
    {
        throw ulsim::ConfigError(what + ": " + std::string(e.what()));
    }
}

double require_key(const json& doc, const std::string& key, const std::string& what)
{
    if (!doc.contains(key) || !doc[key].is_number())
        throw ulsim::ConfigError(what + ": missing numeric key \"" + key + "\"");
    return doc[key].get<double>();
}

int run_rate(const CommonArgs& args, const std::string& fit_path, const std::string& terms_path,
             double epsilon)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ulsim::ParsedConfig parsed = load_plan(args);

    const json fit_doc = load_json_file(fit_path, "fit");
    ulsim::InverseGammaParams ig;
    ig.alpha = require_key(fit_doc, "alpha", "fit");
    ig.beta = require_key(fit_doc, "beta", "fit");

    const json terms_doc = load_json_file(terms_path, "terms");
    ulsim::UatfTerms terms;
    terms.ds_sq = require_key(terms_doc, "ds_sq", "terms");
    terms.iusi_n = require_key(terms_doc, "iusi_n", "terms");
    terms.noise_eff = require_key(terms_doc, "noise_eff", "terms");
    terms.iusi_n_raw = terms.iusi_n;
    if (terms_doc.contains("iui_u"))
        terms.iui_u = require_key(terms_doc, "iui_u", "terms");

    const ulsim::RateDecision d =
        ulsim::epsilon_outage_rate(terms, ig, epsilon, parsed.plan.cfg);

    const fs::path dir = prepare_output_dir(args.out_dir);
    nlohmann::ordered_json doc;
    doc["epsilon"] = d.epsilon;
    doc["threshold_T"] = d.threshold_T;
    doc["se"] = d.se;
    doc["manifest"] = ulsim::kManifestFileName;
    std::ofstream f(dir / "rate.json", std::ios::binary);
    if (!f)
        throw ulsim::ConfigError("output: cannot write rate.json");
    f << doc.dump(2) << "\n";
    f.flush();
    if (!f)
        throw ulsim::ConfigError("output: write failed for rate.json");

    finish_run(args, "rate", parsed.plan.cfg.seed, t0, {"rate.json"});
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MU-MIMO uplink interference and outage simulator"};
    app.set_version_flag("--version", std::string(ulsim::kVersionString));
    app.fallthrough(true);
    app.require_subcommand(1);

    CommonArgs args;
    app.add_option("--config", args.config_path, "Experiment configuration file (JSON)");
    auto* seed_opt = app.add_option("--seed", args.seed, "Override the configured seed");
    app.add_option("--out", args.out_dir, "Output directory (default: current directory)");
    app.add_option("--threads", args.threads,
                   "Worker threads (default: hardware concurrency)");

    app.add_subcommand("sinr-cdf",
                       "Empirical vs analytical SINR CDF for one configuration");
    app.add_subcommand("outage-curve",
                       "Epsilon-outage SE and achieved outage across target epsilons");
    app.add_subcommand("baseline-curve",
                       "Fixed-margin baseline SE and achieved outage across margins");

    std::string samples_path;
    CLI::App* cmd_fit =
        app.add_subcommand("fit", "Moment-matched Inverse-Gamma fit of a sample file");
    cmd_fit->add_option("--samples", samples_path, "Newline-delimited samples (watts)")
        ->required();

    std::string fit_path, terms_path;
    double epsilon = 0.0;
    CLI::App* cmd_rate =
        app.add_subcommand("rate", "Epsilon-outage rate from a fit and quasi-static terms");
    cmd_rate->add_option("--fit", fit_path, "Fit JSON produced by the fit command")->required();
    cmd_rate->add_option("--terms", terms_path, "Quasi-static UatF terms JSON")->required();
    cmd_rate->add_option("--epsilon", epsilon, "Target outage probability in (0, 1)")
        ->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    args.have_seed = seed_opt->count() > 0;

    try
    {
        if (cmd_fit->parsed())
            return run_fit(args, samples_path);
        if (cmd_rate->parsed())
        {
            if (!(epsilon > 0.0 && epsilon < 1.0))
            {
                std::cerr << "usage error: --epsilon must lie in the open interval (0, 1)\n";
                return 1;
            }
            return run_rate(args, fit_path, terms_path, epsilon);
        }
        return run_experiment(args, app.get_subcommands().front()->get_name());
    }
    catch (const ulsim::ConfigError& e)
    {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    catch (const ulsim::NumericalError& e)
    {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
