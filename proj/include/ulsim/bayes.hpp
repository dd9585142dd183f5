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

#ifndef ULSIM_BAYES_HPP
#define ULSIM_BAYES_HPP

#include <vector>

namespace ulsim
{

// Single-observation posterior setup for an unknown Gaussian variance: known
// mean mu_u, observation x, and zeta = (x - mu_u)^2 / 2.
struct PosteriorParams
{
    double mu_u = 0.0;
    double x = 0.0;
    double zeta = 0.0;

    static PosteriorParams from_observation(double mu_u, double x)
    {
        PosteriorParams p;
        p.mu_u = mu_u;
        p.x = x;
        p.zeta = 0.5 * (x - mu_u) * (x - mu_u);
        return p;
    }
};

// Inverse-Gamma distribution with shape alpha and scale beta.
struct InverseGammaParams
{
    double alpha = 0.0;
    double beta = 0.0;
};

// Sample mean and unbiased sample variance of an observation set.
struct SampleStats
{
    double mu = 0.0;
    double v = 0.0;
    long count = 0;
};

// Marginal posterior density of the unknown variance given one observation
// under the uninformative 1/sigma^2 prior:
//   p(s) = (zeta^(1/2) / Gamma(1/2)) s^(-3/2) exp(-zeta / s),
// i.e. Inverse-Gamma(1/2, zeta).  Evaluated from the closed form directly (not
// by delegating to inverse_gamma_pdf, so the two can cross-check each other).
// Throws std::domain_error for sigma_sq <= 0 and DegenerateObservationError
// for zeta = 0.
double posterior_sigma_pdf(double sigma_sq, const PosteriorParams& params);

// Inverse-Gamma density; 0 for x <= 0.
double inverse_gamma_pdf(double x, const InverseGammaParams& params);

// Inverse-Gamma CDF: Q(alpha, beta / x) for x > 0, 0 otherwise.
double inverse_gamma_cdf(double x, const InverseGammaParams& params);

// Inverse-Gamma quantile: the x solving cdf(x) = p, for p in (0, 1).
double inverse_gamma_quantile(double p, const InverseGammaParams& params);

// Analytic mean beta/(alpha-1); requires alpha > 1.
double inverse_gamma_mean(const InverseGammaParams& params);

// Analytic variance beta^2/((alpha-1)^2 (alpha-2)); requires alpha > 2.
double inverse_gamma_variance(const InverseGammaParams& params);

// Moment matching: alpha = mu^2/v + 2, beta = (mu^2/v + 1) mu, so the fitted
// distribution reproduces the sample mean and variance exactly.  Throws
// FitError unless mu > 0 and v > 0.
InverseGammaParams fit_inverse_gamma(const SampleStats& stats);

// Sample mean and unbiased variance.  The input is sorted internally before
// accumulation, so the result is exactly invariant to sample order.  Throws
// std::invalid_argument for fewer than 2 samples, std::domain_error for
// non-positive or non-finite samples, DegenerateStatisticsError when all
// samples are equal (v = 0).
SampleStats sample_stats(std::vector<double> samples);

} // namespace ulsim

#endif
