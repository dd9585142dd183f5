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

#ifndef ULSIM_RECEIVER_HPP
#define ULSIM_RECEIVER_HPP

#include <utility>
#include <vector>

#include <armadillo>

#include "ulsim/channel.hpp"
#include "ulsim/config.hpp"
#include "ulsim/random.hpp"
#include "ulsim/scenario.hpp"

namespace ulsim
{

enum class CombinerScheme
{
    MR,
    RZF
};

struct Combiner
{
    int ue_id = 0;
    arma::cx_vec v;
    CombinerScheme scheme = CombinerScheme::MR;
};

// The four use-and-then-forget SINR terms, estimated over n_realizations
// small-scale realizations:
//   ds_sq     = |sqrt(p_k) mean(v^H h_k)|^2          (desired signal power)
//   iui_u     = sum over unknown UEs of p_i mean(|v^H h_i|^2)
//   iusi_n    = sum over desired+known UEs of p_i mean(|v^H h_i|^2) - ds_sq,
//               clamped at 0 (the unclamped value is kept for diagnostics)
//   noise_eff = noise_power * mean(||v||^2)
struct UatfTerms
{
    double ds_sq = 0.0;
    double iui_u = 0.0;
    double iusi_n = 0.0;
    double noise_eff = 0.0;
    double iusi_n_raw = 0.0; // before clamping, may be slightly negative
    long n_realizations = 0;
};

// Maximum-ratio combiner v = h_hat / ||h_hat||^2 (normalized so v^H h_hat = 1).
// Throws DegenerateCombinerError on a zero estimate.
Combiner mr_combiner(const ChannelEstimate& estimate);

// Regularized zero-forcing combiner: v solves
//   (sum_i p_i h_hat_i h_hat_i^H + noise_w I) v = p_k h_hat_k
// over the estimated (desired+known) UEs, via hermitian_solve.  powers_w is
// index-aligned with estimates; target_ue_id selects k.
Combiner rzf_combiner(const std::vector<ChannelEstimate>& estimates,
                      const std::vector<double>& powers_w, double noise_w, int target_ue_id);

// Monte Carlo estimate of the UatF terms for the desired UE over M
// independent small-scale realizations.  Every realization runs the full
// chain: channel draw, pilot observation, channel estimation for the
// desired+known UEs, combiner construction.  All four terms are paired on the
// same realizations.  Deterministic given (rng state, M).
UatfTerms estimate_uatf_terms(const std::vector<UeRecord>& ues,
                              const std::vector<ChannelStats>& stats, const SystemConfig& cfg,
                              CombinerScheme scheme, long m_realizations, RandomStream& rng);

// Effective SINR and spectral efficiency:
//   sinr = ds_sq / (iui_u + iusi_n + noise_eff)
//   se   = (tau_u / tau_c) log2(1 + sinr)
std::pair<double, double> sinr_and_se(const UatfTerms& terms, const SystemConfig& cfg);

} // namespace ulsim

#endif
