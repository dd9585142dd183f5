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

#include "ulsim/scenario.hpp"

#include <cmath>
#include <complex>

#include "ulsim/errors.hpp"
#include "ulsim/linalg.hpp"

namespace ulsim
{

namespace
{

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kDegToRad = 0.017453292519943295769236907685;

} // namespace

std::vector<UeRecord> build_known_geometry(const SystemConfig& cfg, double r_desired_m)
{
    if (!(r_desired_m > 0.0))
        throw std::domain_error("build_known_geometry: r_desired_m must be positive");

    std::vector<UeRecord> ues;
    ues.reserve(1 + kNumKnownInterferers);

    UeRecord desired;
    desired.id = 0;
    desired.category = UeCategory::Desired;
    const double phi0 = cfg.desired_angle_deg * kDegToRad;
    desired.x_m = r_desired_m * std::cos(phi0);
    desired.y_m = r_desired_m * std::sin(phi0);
    desired.power_mw = cfg.tx_power_mw;
    ues.push_back(desired);

    // Known-interferer angles are drawn once from the geometry child stream of
    // cfg.seed, so they are fixed across drops and across calls.
    RandomStream geo = RandomStream(cfg.seed).child(kGeometryStreamIndex);
    for (int k = 0; k < kNumKnownInterferers; ++k)
    {
        UeRecord ue;
        ue.id = k + 1;
        ue.category = UeCategory::Known;
        const double phi = kTwoPi * geo.uniform();
        ue.x_m = kKnownRadiiM[k] * std::cos(phi);
        ue.y_m = kKnownRadiiM[k] * std::sin(phi);
        ue.power_mw = cfg.tx_power_mw;
        ues.push_back(ue);
    }
    return ues;
}

void append_unknowns(std::vector<UeRecord>& ues, int k_u, RandomStream& rng)
{
    if (k_u < 0)
        throw std::domain_error("append_unknowns: k_u must be non-negative");

    int next_id = 0;
    for (const UeRecord& ue : ues)
        next_id = std::max(next_id, ue.id + 1);

    const double r2_in = kAnnulusInnerM * kAnnulusInnerM;
    const double r2_out = kAnnulusOuterM * kAnnulusOuterM;
    const double power = ues.empty() ? 0.0 : ues.front().power_mw;
    for (int k = 0; k < k_u; ++k)
    {
        UeRecord ue;
        ue.id = next_id++;
        ue.category = UeCategory::Unknown;
        // Area-uniform on the annulus: radius from the inverse CDF of r^2.
        const double r = std::sqrt(r2_in + rng.uniform() * (r2_out - r2_in));
        const double phi = kTwoPi * rng.uniform();
        ue.x_m = r * std::cos(phi);
        ue.y_m = r * std::sin(phi);
        ue.power_mw = power;
        ues.push_back(ue);
    }
}

void assign_pilots(std::vector<UeRecord>& ues, int tau_p, RandomStream& rng)
{
    if (tau_p < 1)
        throw ConfigError("assign_pilots: tau_p must be positive");

    int n_known_category = 0;
    for (const UeRecord& ue : ues)
        if (ue.category != UeCategory::Unknown)
            ++n_known_category;
    if (n_known_category > tau_p)
        throw ConfigError("assign_pilots: desired+known UE count exceeds tau_p");

    int next_pilot = 0;
    for (UeRecord& ue : ues)
    {
        if (ue.category != UeCategory::Unknown)
            ue.pilot = next_pilot++;
        else
            ue.pilot = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(tau_p)));
    }
}

std::vector<UeRecord> build_scenario(const SystemConfig& cfg, double r_desired_m, int k_u,
                                     RandomStream& rng)
{
    std::vector<UeRecord> ues = build_known_geometry(cfg, r_desired_m);
    append_unknowns(ues, k_u, rng);
    assign_pilots(ues, cfg.tau_p, rng);
    return ues;
}

double pathloss_median_db(double distance_m, const SystemConfig& cfg)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("pathloss_median_db: distance must be positive");
    return cfg.pathloss_intercept_db - 10.0 * cfg.pathloss_exponent * std::log10(distance_m);
}

arma::mat shadow_covariance(const std::vector<UeRecord>& ues, const SystemConfig& cfg)
{
    const arma::uword n = ues.size();
    const double var = cfg.shadow_std_db * cfg.shadow_std_db;
    arma::mat C(n, n);
    for (arma::uword k = 0; k < n; ++k)
    {
        C(k, k) = var;
        for (arma::uword l = k + 1; l < n; ++l)
        {
            const double dx = ues[k].x_m - ues[l].x_m;
            const double dy = ues[k].y_m - ues[l].y_m;
            const double delta = std::hypot(dx, dy);
            const double c = var * std::exp2(-delta / cfg.shadow_decorrelation_m);
            C(k, l) = c;
            C(l, k) = c;
        }
    }
    return C;
}

arma::vec draw_shadowing(const std::vector<UeRecord>& ues, const SystemConfig& cfg,
                         RandomStream& rng)
{
    const arma::uword n = ues.size();
    if (n == 0)
        return arma::vec();
    if (cfg.shadow_std_db == 0.0)
        return arma::vec(n, arma::fill::zeros);
    const arma::mat L = psd_factor(shadow_covariance(ues, cfg));
    arma::vec g(n);
    for (arma::uword i = 0; i < n; ++i)
        g(i) = rng.normal();
    return L * g;
}

arma::vec draw_shadowing_conditional(const std::vector<UeRecord>& ues, const arma::vec& frozen_db,
                                     const SystemConfig& cfg, RandomStream& rng)
{
    const arma::uword n = ues.size();
    const arma::uword k = frozen_db.n_elem;
    if (k > n)
        throw std::invalid_argument("draw_shadowing_conditional: more frozen values than UEs");
    if (k == n)
        return frozen_db;
    if (k == 0)
        return draw_shadowing(ues, cfg, rng);

    arma::vec out(n);
    out.head(k) = frozen_db;
    if (cfg.shadow_std_db == 0.0)
    {
        out.tail(n - k).zeros();
        return out;
    }

    const arma::mat C = shadow_covariance(ues, cfg);
    const arma::mat C_kk = C.submat(0, 0, k - 1, k - 1);
    const arma::mat C_ku = C.submat(0, k, k - 1, n - 1);
    const arma::mat C_uu = C.submat(k, k, n - 1, n - 1);

    // Gaussian conditioning: mean X^T f and covariance C_uu - C_ku^T X with
    // X = C_kk^{-1} C_ku.
    arma::mat X;
    if (!arma::solve(X, C_kk, C_ku))
        throw NumericalError("draw_shadowing_conditional: frozen covariance block is singular");
    const arma::vec mean = X.t() * frozen_db;
    arma::mat C_cond = C_uu - C_ku.t() * X;
    C_cond = 0.5 * (C_cond + C_cond.t()); // strip asymmetric rounding debris

    const arma::mat L = psd_factor(C_cond);
    arma::vec g(n - k);
    for (arma::uword i = 0; i < n - k; ++i)
        g(i) = rng.normal();
    out.tail(n - k) = mean + L * g;
    return out;
}

std::map<int, double> large_scale_fading_from_shadowing(const std::vector<UeRecord>& ues,
                                                        const arma::vec& shadow_db,
                                                        const SystemConfig& cfg)
{
    if (shadow_db.n_elem != ues.size())
        throw std::invalid_argument("large_scale_fading_from_shadowing: size mismatch");
    std::map<int, double> betas;
    for (std::size_t i = 0; i < ues.size(); ++i)
    {
        const double beta_db = pathloss_median_db(ues[i].distance_m(), cfg) + shadow_db(i);
        betas[ues[i].id] = std::pow(10.0, beta_db / 10.0);
    }
    return betas;
}

std::map<int, double> large_scale_fading(const std::vector<UeRecord>& ues, const SystemConfig& cfg,
                                         RandomStream& rng)
{
    return large_scale_fading_from_shadowing(ues, draw_shadowing(ues, cfg, rng), cfg);
}

ChannelStats spatial_correlation(const UeRecord& ue, double beta, const SystemConfig& cfg)
{
    if (!(beta > 0.0))
        throw std::domain_error("spatial_correlation: beta must be positive");

    const double theta = std::atan2(ue.y_m, ue.x_m);
    const double sigma_phi = cfg.angular_spread_deg * kDegToRad;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const arma::uword n = cfg.n_antennas;

    ChannelStats stats;
    stats.ue_id = ue.id;
    stats.beta = beta;
    stats.R.set_size(n, n);
    constexpr double kPi = 3.1415926535897932384626433832795;
    for (arma::uword mm = 0; mm < n; ++mm)
    {
        stats.R(mm, mm) = beta;
        for (arma::uword nn = 0; nn < mm; ++nn)
        {
            const double gap = kPi * static_cast<double>(mm - nn);
            const double spread = sigma_phi * gap * c;
            const double mag = beta * std::exp(-0.5 * spread * spread);
            const std::complex<double> val = std::polar(mag, gap * s);
            stats.R(mm, nn) = val;
            stats.R(nn, mm) = std::conj(val);
        }
    }
    return stats;
}

} // namespace ulsim
