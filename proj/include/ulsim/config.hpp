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

#ifndef ULSIM_CONFIG_HPP
#define ULSIM_CONFIG_HPP

#include <cmath>
#include <cstdint>

namespace ulsim
{

// Radio and frame constants of the simulated uplink, with the network
// simulation parameters as defaults.  Powers are carried in the units the
// config file uses (mW / dBm); accessors convert to linear watts once.
struct SystemConfig
{
    int n_antennas = 16;         // N, BS array size
    int tau_c = 200;             // symbols per coherence block
    int tau_p = 10;              // pilot symbols per block
    double bandwidth_hz = 20e6;  // system bandwidth
    double noise_power_dbm = -94.0;
    double tx_power_mw = 100.0;  // common UL transmit power p_i
    double pathloss_exponent = 3.67;

    // Propagation-model constants: 3GPP urban-microcell NLOS median pathloss
    // -30.5 - 36.7 log10(d / 1 m) dB plus spatially correlated lognormal
    // shadowing.
    double pathloss_intercept_db = -30.5; // median channel gain at 1 m
    double shadow_std_db = 4.0;           // lognormal shadowing std
    double shadow_decorrelation_m = 9.0;  // correlation 2^(-distance/this)
    double angular_spread_deg = 15.0;     // local-scattering spread sigma_phi
    double desired_angle_deg = 0.0;       // desired-UE bearing (broadside)

    std::uint64_t seed = 12345;

    int tau_u() const { return tau_c - tau_p; }
    double tx_power_w() const { return tx_power_mw * 1e-3; }
    double noise_power_w() const { return std::pow(10.0, (noise_power_dbm - 30.0) / 10.0); }

    // Throws ConfigError if any invariant is violated (tau_u > 0, positive
    // powers and dimensions, pilot budget covering the known UEs).
    void validate() const;
};

} // namespace ulsim

#endif
