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

#include "ulsim/channel.hpp"

#include <cmath>

#include "ulsim/errors.hpp"
#include "ulsim/linalg.hpp"

namespace ulsim
{

ChannelRealization draw_channels(const std::vector<ChannelStats>& stats, const SystemConfig& cfg,
                                 RandomStream& rng)
{
    const arma::uword n = cfg.n_antennas;
    ChannelRealization out;
    out.h.reserve(stats.size());
    for (const ChannelStats& s : stats)
    {
        if (s.R.n_rows != n || s.R.n_cols != n)
            throw std::invalid_argument("draw_channels: correlation matrix size mismatch");
        out.h.push_back(draw_correlated_cnormal(psd_factor(s.R), rng));
    }
    const double noise_amp = std::sqrt(cfg.noise_power_w());
    out.pilot_noise.reserve(cfg.tau_p);
    for (int t = 0; t < cfg.tau_p; ++t)
    {
        arma::cx_vec nt(n);
        for (arma::uword i = 0; i < n; ++i)
            nt(i) = noise_amp * rng.cnormal();
        out.pilot_noise.push_back(std::move(nt));
    }
    return out;
}

arma::cx_vec pilot_observation(const ChannelRealization& realization,
                               const std::vector<UeRecord>& ues, int pilot_t,
                               const SystemConfig& cfg)
{
    if (pilot_t < 0 || pilot_t >= cfg.tau_p)
        throw std::domain_error("pilot_observation: pilot index out of range");
    if (ues.size() != realization.h.size())
        throw std::invalid_argument("pilot_observation: UE list not aligned with realization");

    arma::cx_vec y = realization.pilot_noise.at(pilot_t);
    for (std::size_t i = 0; i < ues.size(); ++i)
        if (ues[i].pilot == pilot_t)
            y += std::sqrt(cfg.tau_p * ues[i].power_w()) * realization.h[i];
    return y;
}

ChannelEstimate estimate_channel(const arma::cx_vec& y_t_p, const ChannelStats& stats_k,
                                 double p_k_w, const SystemConfig& cfg)
{
    if (!(p_k_w > 0.0))
        throw std::domain_error("estimate_channel: transmit power must be positive");
    const double scale = cfg.tau_p * p_k_w;
    arma::cx_mat A = scale * stats_k.R;
    A.diag() += cfg.noise_power_w();
    ChannelEstimate est;
    est.ue_id = stats_k.ue_id;
    est.h_hat = std::sqrt(scale) * (stats_k.R * hermitian_solve(A, y_t_p));
    return est;
}

} // namespace ulsim
