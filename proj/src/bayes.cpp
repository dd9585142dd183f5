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

#include "ulsim/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ulsim/errors.hpp"
#include "ulsim/special_functions.hpp"

namespace ulsim
{

namespace
{

void check_ig_params(const InverseGammaParams& params)
{
    if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
        throw std::domain_error("inverse gamma: shape alpha must be positive and finite");
    if (!(params.beta > 0.0) || !std::isfinite(params.beta))
        throw std::domain_error("inverse gamma: scale beta must be positive and finite");
}

} // namespace

double posterior_sigma_pdf(double sigma_sq, const PosteriorParams& params)
{
    if (!(sigma_sq > 0.0))
        throw std::domain_error("posterior_sigma_pdf: sigma_sq must be positive");
    if (!(params.zeta >= 0.0) || !std::isfinite(params.zeta))
        throw std::domain_error("posterior_sigma_pdf: zeta must be non-negative and finite");
    const double zeta_check = 0.5 * (params.x - params.mu_u) * (params.x - params.mu_u);
    if (std::abs(params.zeta - zeta_check) > 1e-12 * std::max(1.0, zeta_check))
        throw std::domain_error("posterior_sigma_pdf: zeta inconsistent with (x, mu_u)");
    if (params.zeta == 0.0)
        throw DegenerateObservationError(
            "posterior_sigma_pdf: observation equals the known mean (zeta = 0)");

    // ln Gamma(1/2) = ln sqrt(pi)
    constexpr double kLogGammaHalf = 0.57236494292470008707;
    return std::exp(0.5 * std::log(params.zeta) - kLogGammaHalf - 1.5 * std::log(sigma_sq) -
                    params.zeta / sigma_sq);
}

double inverse_gamma_pdf(double x, const InverseGammaParams& params)
{
    check_ig_params(params);
    if (!(x > 0.0))
        return 0.0;
    return std::exp(params.alpha * std::log(params.beta) - log_gamma(params.alpha) -
                    (params.alpha + 1.0) * std::log(x) - params.beta / x);
}

double inverse_gamma_cdf(double x, const InverseGammaParams& params)
{
    check_ig_params(params);
    if (!(x > 0.0))
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    return reg_upper_gamma(params.alpha, params.beta / x);
}

double inverse_gamma_quantile(double p, const InverseGammaParams& params)
{
    check_ig_params(params);
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("inverse_gamma_quantile: probability must lie in (0, 1)");
    return params.beta / inv_reg_upper_gamma(params.alpha, p);
}

double inverse_gamma_mean(const InverseGammaParams& params)
{
    check_ig_params(params);
    if (!(params.alpha > 1.0))
        throw std::domain_error("inverse_gamma_mean: undefined for alpha <= 1");
    return params.beta / (params.alpha - 1.0);
}

double inverse_gamma_variance(const InverseGammaParams& params)
{
    check_ig_params(params);
    if (!(params.alpha > 2.0))
        throw std::domain_error("inverse_gamma_variance: undefined for alpha <= 2");
    const double am1 = params.alpha - 1.0;
    return params.beta * params.beta / (am1 * am1 * (params.alpha - 2.0));
}

InverseGammaParams fit_inverse_gamma(const SampleStats& stats)
{
    if (!(stats.mu > 0.0) || !std::isfinite(stats.mu))
        throw FitError("fit_inverse_gamma: sample mean must be positive");
    if (!(stats.v > 0.0) || !std::isfinite(stats.v))
        throw FitError("fit_inverse_gamma: sample variance must be positive");
    const double t = stats.mu * stats.mu / stats.v;
    InverseGammaParams params;
    params.alpha = t + 2.0;
    params.beta = (t + 1.0) * stats.mu;
    return params;
}

SampleStats sample_stats(std::vector<double> samples)
{
    if (samples.size() < 2)
        throw std::invalid_argument("sample_stats: need at least 2 samples");
    for (double s : samples)
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::domain_error("sample_stats: samples must be positive and finite");

    // Sorting before accumulation makes the result exactly order-invariant.
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double s : samples)
        sum += s;
    const double mean = sum / n;
    double ss = 0.0;
    for (double s : samples)
        ss += (s - mean) * (s - mean);

    SampleStats stats;
    stats.mu = mean;
    stats.v = ss / (n - 1.0);
    stats.count = static_cast<long>(samples.size());
    if (stats.v == 0.0)
        throw DegenerateStatisticsError("sample_stats: all samples equal (zero variance)");
    return stats;
}

} // namespace ulsim
