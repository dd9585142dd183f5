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

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <armadillo>
#include <doctest.h>

#include "ulsim/channel.hpp"
#include "ulsim/config.hpp"
#include "ulsim/linalg.hpp"
#include "ulsim/random.hpp"
#include "ulsim/scenario.hpp"

using namespace ulsim;

namespace
{

// Small helper: spatial stats for a UE at (x, y) with the given gain.
ChannelStats stats_at(double x, double y, double beta, const SystemConfig& cfg, int id = 0)
{
    UeRecord ue;
    ue.id = id;
    ue.x_m = x;
    ue.y_m = y;
    return spatial_correlation(ue, beta, cfg);
}

ChannelStats identity_stats(arma::uword n, double beta, int id = 0)
{
    ChannelStats s;
    s.ue_id = id;
    s.beta = beta;
    s.R = beta * arma::cx_mat(n, n, arma::fill::eye);
    return s;
}

} // namespace

TEST_SUITE_BEGIN("channel");

TEST_CASE("draw_channels is deterministic and sized like its inputs")
{
    SystemConfig cfg;
    cfg.n_antennas = 8;
    const std::vector<ChannelStats> stats = {stats_at(100.0, 0.0, 1e-10, cfg, 0),
                                             stats_at(0.0, 150.0, 2e-11, cfg, 1)};
    RandomStream a(5), b(5);
    const ChannelRealization ra = draw_channels(stats, cfg, a);
    const ChannelRealization rb = draw_channels(stats, cfg, b);
    REQUIRE(ra.h.size() == 2);
    REQUIRE(ra.pilot_noise.size() == static_cast<std::size_t>(cfg.tau_p));
    for (std::size_t i = 0; i < ra.h.size(); ++i)
    {
        REQUIRE(ra.h[i].n_elem == 8);
        CHECK(arma::norm(ra.h[i] - rb.h[i]) == 0.0);
    }
    for (std::size_t t = 0; t < ra.pilot_noise.size(); ++t)
        CHECK(arma::norm(ra.pilot_noise[t] - rb.pilot_noise[t]) == 0.0);
}

TEST_CASE("a zero correlation matrix gives an exactly zero channel")
{
    SystemConfig cfg;
    cfg.n_antennas = 4;
    ChannelStats zero;
    zero.R = arma::cx_mat(4, 4, arma::fill::zeros);
    RandomStream rng(9);
    const ChannelRealization r = draw_channels({zero}, cfg, rng);
    CHECK(arma::norm(r.h[0]) == 0.0);
}

TEST_CASE("empirical channel covariance converges to R in relative Frobenius norm")
{
    SystemConfig cfg;
    cfg.n_antennas = 8;
    const ChannelStats stats = stats_at(80.0, 60.0, 3e-10, cfg);
    const arma::cx_mat factor = psd_factor(stats.R);
    RandomStream rng(77);
    const long m = 100000;
    arma::cx_mat acc(8, 8, arma::fill::zeros);
    for (long i = 0; i < m; ++i)
    {
        const arma::cx_vec h = draw_correlated_cnormal(factor, rng);
        acc += h * h.t();
    }
    acc /= static_cast<double>(m);
    const double rel_err = arma::norm(acc - stats.R, "fro") / arma::norm(stats.R, "fro");
    CHECK(rel_err <= 5.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("channels of different UEs are uncorrelated")
{
    SystemConfig cfg;
    cfg.n_antennas = 4;
    const std::vector<ChannelStats> stats = {identity_stats(4, 1.0, 0), identity_stats(4, 1.0, 1)};
    RandomStream rng(2022);
    const long m = 20000;
    arma::cx_mat cross(4, 4, arma::fill::zeros);
    for (long i = 0; i < m; ++i)
    {
        const ChannelRealization r = draw_channels(stats, cfg, rng);
        cross += r.h[0] * r.h[1].t();
    }
    cross /= static_cast<double>(m);
    // Each entry is a mean of products of independent CN(0,1): se = 1/sqrt(m).
    const double se = 1.0 / std::sqrt(static_cast<double>(m));
    for (auto& e : cross)
        CHECK(std::abs(e) < 4.5 * se);
}

TEST_CASE("pilot_observation of an empty slot is pure noise")
{
    SystemConfig cfg;
    cfg.n_antennas = 4;
    std::vector<UeRecord> ues(1);
    ues[0].pilot = 0;
    ues[0].power_mw = 100.0;
    RandomStream rng(3);
    const ChannelRealization r = draw_channels({identity_stats(4, 1.0)}, cfg, rng);
    const arma::cx_vec y_empty = pilot_observation(r, ues, 7, cfg);
    CHECK(arma::norm(y_empty - r.pilot_noise[7]) == 0.0);
}

TEST_CASE("pilot_observation superposes co-pilot UEs with the pilot gain")
{
    SystemConfig cfg;
    cfg.n_antennas = 4;
    std::vector<UeRecord> ues(3);
    for (int i = 0; i < 3; ++i)
    {
        ues[static_cast<std::size_t>(i)].id = i;
        ues[static_cast<std::size_t>(i)].power_mw = 200.0;
    }
    ues[0].pilot = 2;
    ues[1].pilot = 2; // contaminates UE 0
    ues[2].pilot = 5;
    RandomStream rng(14);
    const std::vector<ChannelStats> stats = {identity_stats(4, 1.0, 0), identity_stats(4, 1.0, 1),
                                             identity_stats(4, 1.0, 2)};
    const ChannelRealization r = draw_channels(stats, cfg, rng);

    const arma::cx_vec y2 = pilot_observation(r, ues, 2, cfg);
    const double amp = std::sqrt(cfg.tau_p * 0.2); // tau_p * p with p = 200 mW
    const arma::cx_vec want = r.pilot_noise[2] + amp * r.h[0] + amp * r.h[1];
    CHECK(arma::norm(y2 - want) < 1e-12 * arma::norm(want));

    const arma::cx_vec y5 = pilot_observation(r, ues, 5, cfg);
    const arma::cx_vec want5 = r.pilot_noise[5] + amp * r.h[2];
    CHECK(arma::norm(y5 - want5) < 1e-12 * arma::norm(want5));

    CHECK_THROWS_AS(pilot_observation(r, ues, -1, cfg), std::domain_error);
    CHECK_THROWS_AS(pilot_observation(r, ues, cfg.tau_p, cfg), std::domain_error);
    std::vector<UeRecord> misaligned(2);
    CHECK_THROWS_AS(pilot_observation(r, misaligned, 0, cfg), std::invalid_argument);
}

TEST_CASE("estimate_channel reduces to y/2 when tau_p p R equals the noise level")
{
    // With tau_p * p = 1 and R = noise_power * I the estimator is
    // sqrt(1) * R * (R + R)^{-1} = I/2.
    SystemConfig cfg;
    cfg.noise_power_dbm = 30.0; // 1 W
    REQUIRE(cfg.noise_power_w() == doctest::Approx(1.0).epsilon(1e-15));
    const double p_w = 0.1; // tau_p = 10 -> tau_p * p = 1
    ChannelStats stats = identity_stats(static_cast<arma::uword>(cfg.n_antennas), 1.0, 4);

    RandomStream rng(8);
    arma::cx_vec y(static_cast<arma::uword>(cfg.n_antennas));
    for (auto& e : y)
        e = rng.cnormal();
    const ChannelEstimate est = estimate_channel(y, stats, p_w, cfg);
    CHECK(est.ue_id == 4);
    CHECK(arma::norm(est.h_hat - 0.5 * y) < 1e-13 * arma::norm(y));

    CHECK_THROWS_AS(estimate_channel(y, stats, 0.0, cfg), std::domain_error);
}

TEST_CASE("estimate_channel of a zero correlation matrix is zero")
{
    SystemConfig cfg;
    cfg.n_antennas = 4;
    ChannelStats zero;
    zero.R = arma::cx_mat(4, 4, arma::fill::zeros);
    arma::cx_vec y(4, arma::fill::ones);
    const ChannelEstimate est = estimate_channel(y, zero, 0.1, cfg);
    CHECK(arma::norm(est.h_hat) == 0.0);
}

TEST_CASE("estimate_channel matches a 2x2 cofactor-inverse oracle")
{
    SystemConfig cfg;
    cfg.n_antennas = 2;
    ChannelStats stats;
    stats.ue_id = 1;
    stats.R.set_size(2, 2);
    stats.R(0, 0) = 3e-11;
    stats.R(1, 1) = 3e-11;
    stats.R(0, 1) = std::complex<double>(1e-11, 2e-11);
    stats.R(1, 0) = std::conj(stats.R(0, 1));
    const double p_w = 0.1;
    const double q = cfg.tau_p * p_w;

    arma::cx_mat a = q * stats.R;
    a.diag() += cfg.noise_power_w();
    // Explicit 2x2 inverse by cofactors.
    const std::complex<double> det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    arma::cx_mat a_inv(2, 2);
    a_inv(0, 0) = a(1, 1) / det;
    a_inv(1, 1) = a(0, 0) / det;
    a_inv(0, 1) = -a(0, 1) / det;
    a_inv(1, 0) = -a(1, 0) / det;

    arma::cx_vec y{{0.7, -0.3}, {-1.1, 0.4}};
    const arma::cx_vec want = std::sqrt(q) * (stats.R * (a_inv * y));
    const ChannelEstimate est = estimate_channel(y, stats, p_w, cfg);
    CHECK(arma::norm(est.h_hat - want) < 1e-12 * arma::norm(want));
}

TEST_CASE("estimate_channel is linear in the observation")
{
    SystemConfig cfg;
    cfg.n_antennas = 4;
    const ChannelStats stats = stats_at(90.0, -20.0, 1e-10, cfg);
    RandomStream rng(21);
    arma::cx_vec y1(4), y2(4);
    for (auto& e : y1)
        e = rng.cnormal();
    for (auto& e : y2)
        e = rng.cnormal();
    const arma::cx_vec e1 = estimate_channel(y1, stats, 0.1, cfg).h_hat;
    const arma::cx_vec e2 = estimate_channel(y2, stats, 0.1, cfg).h_hat;
    const arma::cx_vec e12 = estimate_channel(y1 + y2, stats, 0.1, cfg).h_hat;
    CHECK(arma::norm(e12 - e1 - e2) < 1e-13 * (arma::norm(e1) + arma::norm(e2)));
    const arma::cx_vec e_scaled = estimate_channel(2.0 * y1, stats, 0.1, cfg).h_hat;
    CHECK(arma::norm(e_scaled - 2.0 * e1) < 1e-13 * arma::norm(e1));
}

TEST_CASE("MMSE estimate is uncorrelated with its error and has the predicted covariance")
{
    SystemConfig cfg;
    cfg.n_antennas = 4;
    cfg.noise_power_dbm = -10.0; // 0.1 mW -> comparable to the received power
    const double beta = 1e-4;
    const ChannelStats stats = stats_at(100.0, 30.0, beta, cfg);
    const double p_w = 0.1;
    const double q = cfg.tau_p * p_w;

    std::vector<UeRecord> ues(1);
    ues[0].pilot = 0;
    ues[0].power_mw = 100.0;
    ues[0].x_m = 100.0;
    ues[0].y_m = 30.0;

    RandomStream rng(10);
    const long m = 20000;
    arma::cx_mat acc_orth(4, 4, arma::fill::zeros);
    arma::mat acc_orth_var(4, 4, arma::fill::zeros);
    arma::cx_mat acc_cov(4, 4, arma::fill::zeros);
    for (long i = 0; i < m; ++i)
    {
        const ChannelRealization r = draw_channels({stats}, cfg, rng);
        const arma::cx_vec y = pilot_observation(r, ues, 0, cfg);
        const arma::cx_vec h_hat = estimate_channel(y, stats, p_w, cfg).h_hat;
        const arma::cx_mat prod = (r.h[0] - h_hat) * h_hat.t();
        acc_orth += prod;
        acc_orth_var += arma::square(arma::abs(prod));
        acc_cov += h_hat * h_hat.t();
    }
    acc_orth /= static_cast<double>(m);
    acc_cov /= static_cast<double>(m);

    // Orthogonality: every entry of E[(h - h_hat) h_hat^H] is zero; compare
    // against its own empirical standard error.
    for (arma::uword i = 0; i < 4; ++i)
        for (arma::uword j = 0; j < 4; ++j)
        {
            const double second = acc_orth_var(i, j) / static_cast<double>(m);
            const double se = std::sqrt(second / static_cast<double>(m));
            CHECK(std::abs(acc_orth(i, j)) < 4.5 * se);
        }

    // Covariance of the estimate: q R (q R + noise I)^{-1} R.
    arma::cx_mat a = q * stats.R;
    a.diag() += cfg.noise_power_w();
    const arma::cx_mat want = q * stats.R * hermitian_solve(a, arma::cx_mat(stats.R));
    const double rel = arma::norm(acc_cov - want, "fro") / arma::norm(want, "fro");
    CHECK(rel < 5.0 / std::sqrt(static_cast<double>(m)) * 2.0);
}

TEST_SUITE_END();
