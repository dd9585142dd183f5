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

#ifndef ULSIM_OUTAGE_HPP
#define ULSIM_OUTAGE_HPP

#include <vector>

#include "ulsim/bayes.hpp"
#include "ulsim/config.hpp"
#include "ulsim/receiver.hpp"

namespace ulsim
{

// Rate chosen for a target outage probability epsilon.
struct RateDecision
{
    double epsilon = 0.0;
    double threshold_T = 0.0; // SINR threshold T(epsilon)
    double se = 0.0;          // (tau_u/tau_c) log2(1 + threshold_T)
};

// Rate chosen by the fixed-margin baseline.
struct BaselineDecision
{
    double margin_m = 1.0;
    double sinr_bl = 0.0; // interference-model-free SINR ds/(iusi + noise)
    double se = 0.0;      // (tau_u/tau_c) log2(1 + sinr_bl/m)
};

// Outage probability Pr[SINR <= T] when the unknown interference power is
// modelled as IG(alpha, beta) and the remaining terms are quasi-static:
//   z = ds_sq/T - iusi_n - noise_eff;  probability = 1 if z <= 0,
//   otherwise 1 - cdf_ig(z).
double outage_probability(const UatfTerms& terms, const InverseGammaParams& ig, double T);

// The epsilon-outage rate: the largest SINR threshold whose modelled outage is
// exactly epsilon,
//   T = ds_sq / (quantile_ig(1 - epsilon) + iusi_n + noise_eff),
// and the corresponding spectral efficiency.
RateDecision epsilon_outage_rate(const UatfTerms& terms, const InverseGammaParams& ig,
                                 double epsilon, const SystemConfig& cfg);

// Fixed-margin baseline: ignores the unknown interference entirely and backs
// off the interference-free SINR by the margin m.
BaselineDecision baseline_rate(const UatfTerms& terms, double margin_m, const SystemConfig& cfg);

// The four-step rate adaptation procedure: sample statistics of the measured
// unknown-interference powers, moment-matched IG fit, epsilon-outage rate.
// Pure composition of sample_stats, fit_inverse_gamma and epsilon_outage_rate.
RateDecision rate_adaptation_procedure(const std::vector<double>& interference_samples,
                                       const UatfTerms& terms, double epsilon,
                                       const SystemConfig& cfg);

} // namespace ulsim

#endif
