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

#ifndef ULSIM_SCENARIO_HPP
#define ULSIM_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <vector>

#include <armadillo>

#include "ulsim/config.hpp"
#include "ulsim/random.hpp"

namespace ulsim
{

// Scenario geometry constants: one desired UE, five known interferers on
// fixed circles, unknown interferers dropped area-uniformly on an annulus.
constexpr int kNumKnownInterferers = 5;
constexpr double kKnownRadiiM[kNumKnownInterferers] = {60.0, 100.0, 140.0, 180.0, 220.0};
constexpr double kAnnulusInnerM = 250.0;
constexpr double kAnnulusOuterM = 500.0;

// Reserved child-stream indices of the experiment root stream.  Drop streams
// use indices 0 .. n_drops-1; the fixed geometry and the frozen desired/known
// shadowing use the reserved high indices so they never collide.
constexpr std::uint64_t kGeometryStreamIndex = 0x8000000000000000ULL;
constexpr std::uint64_t kShadowStreamIndex = 0x8000000000000001ULL;

enum class UeCategory
{
    Desired,
    Known,
    Unknown
};

struct UeRecord
{
    int id = 0;
    UeCategory category = UeCategory::Unknown;
    double x_m = 0.0;
    double y_m = 0.0;
    int pilot = -1;          // index in [0, tau_p), -1 before assignment
    double power_mw = 0.0;   // UL transmit power

    double distance_m() const { return std::hypot(x_m, y_m); }
    double power_w() const { return power_mw * 1e-3; }
};

// Per-UE spatial correlation matrix and its normalized trace.
struct ChannelStats
{
    int ue_id = 0;
    arma::cx_mat R;
    double beta = 0.0; // trace(R)/N
};

// Desired UE (id 0, bearing cfg.desired_angle_deg) plus the five known
// interferers at the fixed radii with angles drawn once from the geometry
// child stream of cfg.seed.  Pilots are pre-assigned 0..5.  Pure function of
// (cfg, r_desired_m): identical inputs give bit-identical geometry.
std::vector<UeRecord> build_known_geometry(const SystemConfig& cfg, double r_desired_m);

// Append k_u unknown interferers, dropped area-uniformly on the annulus
// [kAnnulusInnerM, kAnnulusOuterM]; pilots stay unassigned (-1).
void append_unknowns(std::vector<UeRecord>& ues, int k_u, RandomStream& rng);

// Pilot assignment: desired+known UEs get the lowest pilot indices
// bijectivally in record order; each unknown UE draws uniformly on [0, tau_p).
// Throws ConfigError if the desired+known count exceeds tau_p.
void assign_pilots(std::vector<UeRecord>& ues, int tau_p, RandomStream& rng);

// Full scenario: fixed known geometry, k_u fresh unknowns from rng, pilots
// assigned.  Given identical (cfg.seed, arguments, rng state) the result is
// bit-identical.
std::vector<UeRecord> build_scenario(const SystemConfig& cfg, double r_desired_m, int k_u,
                                     RandomStream& rng);

// Median channel gain in dB at the given distance:
// intercept - 10 * exponent * log10(d / 1 m).  Throws std::domain_error for
// non-positive distance.
double pathloss_median_db(double distance_m, const SystemConfig& cfg);

// Shadowing covariance matrix in dB^2: entry (k,l) is
// shadow_std^2 * 2^(-delta_kl / decorrelation distance) with delta_kl the
// distance between UEs k and l.
arma::mat shadow_covariance(const std::vector<UeRecord>& ues, const SystemConfig& cfg);

// Joint draw of the correlated shadowing vector (dB) for all UEs.
arma::vec draw_shadowing(const std::vector<UeRecord>& ues, const SystemConfig& cfg,
                         RandomStream& rng);

// Conditional draw: the first frozen_db.n_elem UEs keep the given shadowing
// values; the remaining UEs are drawn from the Gaussian conditional on them.
// Used to freeze desired/known shadowing across drops while unknown UEs are
// redrawn.
arma::vec draw_shadowing_conditional(const std::vector<UeRecord>& ues, const arma::vec& frozen_db,
                                     const SystemConfig& cfg, RandomStream& rng);

// Large-scale fading coefficients beta (linear) per UE id, combining median
// pathloss with the given shadowing vector.
std::map<int, double> large_scale_fading_from_shadowing(const std::vector<UeRecord>& ues,
                                                        const arma::vec& shadow_db,
                                                        const SystemConfig& cfg);

// Convenience: joint shadowing draw + combination.
std::map<int, double> large_scale_fading(const std::vector<UeRecord>& ues, const SystemConfig& cfg,
                                         RandomStream& rng);

// Local scattering correlation matrix for a half-wavelength ULA: entry (m,n)
// is beta * exp(j*pi*(m-n)*sin(theta)) * exp(-(sigma_phi*pi*(m-n)*cos(theta))^2/2)
// with theta the geographic bearing of the UE and sigma_phi the Gaussian
// angular spread.  Diagonal entries equal beta exactly.
ChannelStats spatial_correlation(const UeRecord& ue, double beta, const SystemConfig& cfg);

} // namespace ulsim

#endif
