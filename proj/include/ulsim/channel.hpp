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

#ifndef ULSIM_CHANNEL_HPP
#define ULSIM_CHANNEL_HPP

#include <vector>

#include <armadillo>

#include "ulsim/config.hpp"
#include "ulsim/random.hpp"
#include "ulsim/scenario.hpp"

namespace ulsim
{

// One small-scale realization: channel vectors indexed like the ChannelStats
// list they were drawn from, plus fresh pilot noise for every pilot slot.
struct ChannelRealization
{
    std::vector<arma::cx_vec> h;           // per UE, same order as the stats list
    std::vector<arma::cx_vec> pilot_noise; // per pilot index in [0, tau_p)
};

struct ChannelEstimate
{
    int ue_id = 0;
    arma::cx_vec h_hat;
};

// Draw h_k ~ N_C(0, R_k) independently per UE (in list order) and pilot noise
// n_t ~ N_C(0, noise_power I) for every pilot slot (in pilot order).  The
// correlation factor is recomputed per call; hot loops precompute it instead
// and consume the stream in the same order, so both paths see identical draws.
ChannelRealization draw_channels(const std::vector<ChannelStats>& stats, const SystemConfig& cfg,
                                 RandomStream& rng);

// Received pilot signal for slot t:
//   y_t = sum over UEs with pilot t of sqrt(tau_p * p_i) h_i + n_t.
// ues must be index-aligned with the realization's channel list.
arma::cx_vec pilot_observation(const ChannelRealization& realization,
                               const std::vector<UeRecord>& ues, int pilot_t,
                               const SystemConfig& cfg);

// Channel estimate for a known-category UE from its pilot observation:
//   h_hat = sqrt(tau_p p_k) R_k (tau_p p_k R_k + noise_power I)^{-1} y_t,
// computed with hermitian_solve, never an explicit inverse.  p_k_w is the UE
// transmit power in watts.
ChannelEstimate estimate_channel(const arma::cx_vec& y_t_p, const ChannelStats& stats_k,
                                 double p_k_w, const SystemConfig& cfg);

} // namespace ulsim

#endif
