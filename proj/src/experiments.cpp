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

#include "ulsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ulsim/channel.hpp"
#include "ulsim/errors.hpp"
#include "ulsim/scenario.hpp"

namespace ulsim
{

void ExperimentPlan::validate() const
{
    cfg.validate();
    if (!(r_desired_m > 0.0))
        throw ConfigError("r_desired_m: must be positive");
    if (k_u < 0)
        throw ConfigError("k_u: must be non-negative");
    if (n_drops < 100)
        throw ConfigError("n_drops: must be at least 100");
    if (m_small_scale < 2)
        throw ConfigError("m_small_scale: must be at least 2");
    if (!(calibration_fraction > 0.0 && calibration_fraction < 1.0))
        throw ConfigError("calibration_fraction: must lie in (0, 1)");
    if (calibration_fraction * n_drops < 50.0)
        throw ConfigError("calibration_fraction: calibration set must cover at least 50 drops");
    if (epsilons.empty())
        throw ConfigError("epsilons: must not be empty");
    for (double e : epsilons)
        if (!(e > 0.0 && e < 1.0))
            throw ConfigError("epsilons: every entry must lie in (0, 1)");
    for (double m : margins)
        if (!(m >= 1.0))
            throw ConfigError("margins: every entry must be at least 1");
}

std::vector<DropResult> run_drops(const ExperimentPlan& plan, int n_threads)
{
    plan.cfg.validate();
    if (plan.n_drops < 1)
        throw ConfigError("n_drops: must be at least 1");
    if (plan.m_small_scale < 2)
        throw ConfigError("m_small_scale: must be at least 2");
    if (n_threads < 1)
        n_threads = 1;

    const SystemConfig& cfg = plan.cfg;
    const RandomStream root(cfg.seed);

    // Frozen across drops: known geometry and the desired/known shadowing.
    const std::vector<UeRecord> known = build_known_geometry(cfg, plan.r_desired_m);
    RandomStream shadow_rng = root.child(kShadowStreamIndex);
    const arma::vec known_shadow = draw_shadowing(known, cfg, shadow_rng);

    std::vector<DropResult> results(plan.n_drops);
    std::atomic<int> next_drop{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&]()
    {
        for (;;)
        {
            const int d = next_drop.fetch_add(1);
            if (d >= plan.n_drops || failed.load())
                return;
            try
            {
                RandomStream drop_rng = root.child(static_cast<std::uint64_t>(d));
                std::vector<UeRecord> ues = known;
                append_unknowns(ues, plan.k_u, drop_rng);
                assign_pilots(ues, cfg.tau_p, drop_rng);

                const arma::vec shadow =
                    draw_shadowing_conditional(ues, known_shadow, cfg, drop_rng);
                const std::map<int, double> betas =
                    large_scale_fading_from_shadowing(ues, shadow, cfg);

                std::vector<ChannelStats> stats;
                stats.reserve(ues.size());
                for (const UeRecord& ue : ues)
                    stats.push_back(spatial_correlation(ue, betas.at(ue.id), cfg));

                DropResult r;
                r.drop_index = d;
                r.terms = estimate_uatf_terms(ues, stats, cfg, plan.scheme, plan.m_small_scale,
                                              drop_rng);
                std::tie(r.sinr, r.se) = sinr_and_se(r.terms, cfg);
                results[d] = std::move(r);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    if (n_threads == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);
    return results;
}

SplitResults split_results(const std::vector<DropResult>& results, double calibration_fraction)
{
    if (!(calibration_fraction > 0.0 && calibration_fraction < 1.0))
        throw std::domain_error("split_results: calibration_fraction must lie in (0, 1)");
    const std::size_t n = results.size();
    std::size_t n_cal = static_cast<std::size_t>(
        std::lround(calibration_fraction * static_cast<double>(n)));
    if (n_cal < 1 || n_cal >= n)
        throw std::invalid_argument("split_results: both split sides must be non-empty");

    SplitResults split;
    split.calibration.assign(results.begin(), results.begin() + n_cal);
    split.heldout.assign(results.begin() + n_cal, results.end());
    return split;
}

CalibrationFit calibrate(const std::vector<DropResult>& calibration)
{
    if (calibration.size() < 2)
        throw std::invalid_argument("calibrate: need at least 2 calibration drops");

    std::vector<double> iui;
    iui.reserve(calibration.size());
    double ds = 0.0, iusi = 0.0, noise = 0.0, iui_mean = 0.0;
    for (const DropResult& r : calibration)
    {
        iui.push_back(r.terms.iui_u);
        ds += r.terms.ds_sq;
        iusi += r.terms.iusi_n;
        noise += r.terms.noise_eff;
        iui_mean += r.terms.iui_u;
    }
    const double inv_n = 1.0 / static_cast<double>(calibration.size());

    CalibrationFit fit;
    fit.interference_stats = sample_stats(std::move(iui));
    fit.ig = fit_inverse_gamma(fit.interference_stats);
    fit.quasi_static.ds_sq = ds * inv_n;
    fit.quasi_static.iusi_n = iusi * inv_n;
    fit.quasi_static.iusi_n_raw = fit.quasi_static.iusi_n;
    fit.quasi_static.noise_eff = noise * inv_n;
    fit.quasi_static.iui_u = iui_mean * inv_n;
    fit.quasi_static.n_realizations = static_cast<long>(calibration.size());
    return fit;
}

double analytical_sinr_cdf_at(const CalibrationFit& fit, double T)
{
    return outage_probability(fit.quasi_static, fit.ig, T);
}

std::vector<std::pair<double, double>> analytical_sinr_cdf(
    const std::vector<DropResult>& calibration, const std::vector<double>& grid)
{
    const CalibrationFit fit = calibrate(calibration);
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double T : grid)
        out.emplace_back(T, analytical_sinr_cdf_at(fit, T));
    return out;
}

namespace
{

double empirical_outage(const std::vector<DropResult>& heldout, double threshold)
{
    std::size_t below = 0;
    for (const DropResult& r : heldout)
        if (r.sinr < threshold)
            ++below;
    return static_cast<double>(below) / static_cast<double>(heldout.size());
}

} // namespace

std::vector<OutageCurvePoint> epsilon_outage_curve(const ExperimentPlan& plan,
                                                   const std::vector<DropResult>& results)
{
    const SplitResults split = split_results(results, plan.calibration_fraction);
    const CalibrationFit fit = calibrate(split.calibration);

    std::vector<OutageCurvePoint> curve;
    curve.reserve(plan.epsilons.size());
    for (double eps : plan.epsilons)
    {
        const RateDecision d = epsilon_outage_rate(fit.quasi_static, fit.ig, eps, plan.cfg);
        OutageCurvePoint p;
        p.epsilon = eps;
        p.se_model = d.se;
        p.empirical_outage = empirical_outage(split.heldout, d.threshold_T);
        curve.push_back(p);
    }
    return curve;
}

std::vector<BaselineCurvePoint> baseline_curve(const ExperimentPlan& plan,
                                               const std::vector<DropResult>& results)
{
    const SplitResults split = split_results(results, plan.calibration_fraction);
    const CalibrationFit fit = calibrate(split.calibration);

    std::vector<BaselineCurvePoint> curve;
    curve.reserve(plan.margins.size());
    for (double m : plan.margins)
    {
        const BaselineDecision d = baseline_rate(fit.quasi_static, m, plan.cfg);
        BaselineCurvePoint p;
        p.margin = m;
        p.se = d.se;
        // The baseline SE is achieved iff the actual SINR supports it, i.e.
        // SINR >= sinr_bl / m.
        p.empirical_outage = empirical_outage(split.heldout, d.sinr_bl / m);
        curve.push_back(p);
    }
    return curve;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf)
{
    if (samples.empty())
        throw std::invalid_argument("ks_distance: sample set is empty");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double f = cdf(samples[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

} // namespace ulsim
