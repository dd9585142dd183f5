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

#include "ulsim/outage.hpp"

#include <cmath>
#include <stdexcept>

#include "ulsim/errors.hpp"
#include "ulsim/special_functions.hpp"

namespace ulsim
{

double outage_probability(const UatfTerms& terms, const InverseGammaParams& ig, double T)
{
    if (!(T > 0.0))
        throw std::domain_error("outage_probability: threshold must be positive");
    const double z = terms.ds_sq / T - terms.iusi_n - terms.noise_eff;
    if (z <= 0.0)
        return 1.0; // threshold unreachable even with zero unknown interference
    // 1 - Q(alpha, beta/z) evaluated as P(alpha, beta/z) to keep absolute
    // accuracy when the outage is tiny.
    return reg_lower_gamma(ig.alpha, ig.beta / z);
}

RateDecision epsilon_outage_rate(const UatfTerms& terms, const InverseGammaParams& ig,
                                 double epsilon, const SystemConfig& cfg)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("epsilon_outage_rate: epsilon must lie in (0, 1)");
    if (!(terms.ds_sq > 0.0))
        throw std::domain_error("epsilon_outage_rate: desired-signal power must be positive");

    const double q = inverse_gamma_quantile(1.0 - epsilon, ig);
    RateDecision d;
    d.epsilon = epsilon;
    d.threshold_T = terms.ds_sq / (q + terms.iusi_n + terms.noise_eff);
    d.se = (static_cast<double>(cfg.tau_u()) / cfg.tau_c) * std::log2(1.0 + d.threshold_T);
    return d;
}

BaselineDecision baseline_rate(const UatfTerms& terms, double margin_m, const SystemConfig& cfg)
{
    if (!(margin_m >= 1.0))
        throw std::domain_error("baseline_rate: margin must be at least 1");
    if (!(terms.noise_eff > 0.0))
        throw std::domain_error("baseline_rate: effective noise must be positive");

    BaselineDecision d;
    d.margin_m = margin_m;
    d.sinr_bl = terms.ds_sq / (terms.iusi_n + terms.noise_eff);
    d.se = (static_cast<double>(cfg.tau_u()) / cfg.tau_c) * std::log2(1.0 + d.sinr_bl / margin_m);
    return d;
}

RateDecision rate_adaptation_procedure(const std::vector<double>& interference_samples,
                                       const UatfTerms& terms, double epsilon,
                                       const SystemConfig& cfg)
{
    const SampleStats stats = sample_stats(interference_samples);
    const InverseGammaParams ig = fit_inverse_gamma(stats);
    return epsilon_outage_rate(terms, ig, epsilon, cfg);
}

} // namespace ulsim
