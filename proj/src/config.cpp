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

#include "ulsim/config.hpp"

#include <string>

#include "ulsim/errors.hpp"
#include "ulsim/scenario.hpp"

namespace ulsim
{

void SystemConfig::validate() const
{
    if (n_antennas < 1)
        throw ConfigError("n_antennas: must be at least 1");
    if (tau_c < 2)
        throw ConfigError("tau_c: must be at least 2");
    if (tau_p < 1)
        throw ConfigError("tau_p: must be at least 1");
    if (tau_u() <= 0)
        throw ConfigError("tau_p: must be smaller than tau_c (tau_u = tau_c - tau_p > 0)");
    // The desired UE plus the known interferers need orthogonal pilots.
    if (tau_p < kNumKnownInterferers + 1)
        throw ConfigError("tau_p: must cover the " + std::to_string(kNumKnownInterferers + 1) +
                          " desired+known UEs with orthogonal pilots");
    if (!(bandwidth_hz > 0.0))
        throw ConfigError("bandwidth_hz: must be positive");
    if (!(tx_power_mw > 0.0))
        throw ConfigError("tx_power_mw: must be positive");
    if (!std::isfinite(noise_power_dbm))
        throw ConfigError("noise_power_dbm: must be finite");
    if (!(pathloss_exponent > 0.0))
        throw ConfigError("pathloss_exponent: must be positive");
    if (!(shadow_std_db >= 0.0))
        throw ConfigError("shadow_std_db: must be non-negative");
    if (!(shadow_decorrelation_m > 0.0))
        throw ConfigError("shadow_decorrelation_m: must be positive");
    if (!(angular_spread_deg >= 0.0))
        throw ConfigError("angular_spread_deg: must be non-negative");
}

} // namespace ulsim
