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

#include "ulsim/receiver.hpp"

#include <cmath>
#include <complex>

#include "ulsim/errors.hpp"
#include "ulsim/linalg.hpp"

namespace ulsim
{

Combiner mr_combiner(const ChannelEstimate& estimate)
{
    const double nrm2 = std::real(arma::cdot(estimate.h_hat, estimate.h_hat));
    if (!(nrm2 > 0.0) || !std::isfinite(nrm2))
        throw DegenerateCombinerError("mr_combiner: zero or non-finite channel estimate");
    Combiner c;
    c.ue_id = estimate.ue_id;
    c.scheme = CombinerScheme::MR;
    c.v = estimate.h_hat / nrm2;
    return c;
}

Combiner rzf_combiner(const std::vector<ChannelEstimate>& estimates,
                      const std::vector<double>& powers_w, double noise_w, int target_ue_id)
{
    if (estimates.empty())
        throw std::invalid_argument("rzf_combiner: estimate list is empty");
    if (powers_w.size() != estimates.size())
        throw std::invalid_argument("rzf_combiner: powers not aligned with estimates");
    if (!(noise_w > 0.0))
        throw std::domain_error("rzf_combiner: noise power must be positive");

    const arma::uword n = estimates.front().h_hat.n_elem;
    arma::cx_mat A(n, n, arma::fill::zeros);
    const ChannelEstimate* target = nullptr;
    double p_target = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i)
    {
        if (estimates[i].h_hat.n_elem != n)
            throw std::invalid_argument("rzf_combiner: estimate dimension mismatch");
        A += powers_w[i] * (estimates[i].h_hat * estimates[i].h_hat.t());
        if (estimates[i].ue_id == target_ue_id)
        {
            target = &estimates[i];
            p_target = powers_w[i];
        }
    }
    if (target == nullptr)
        throw std::invalid_argument("rzf_combiner: target UE not among the estimates");
    A.diag() += noise_w;

    Combiner c;
    c.ue_id = target_ue_id;
    c.scheme = CombinerScheme::RZF;
    c.v = hermitian_solve(A, arma::cx_vec(p_target * target->h_hat));
    return c;
}

UatfTerms estimate_uatf_terms(const std::vector<UeRecord>& ues,
                              const std::vector<ChannelStats>& stats, const SystemConfig& cfg,
                              CombinerScheme scheme, long m_realizations, RandomStream& rng)
{
    if (m_realizations < 2)
        throw std::invalid_argument("estimate_uatf_terms: need at least 2 realizations");
    if (ues.size() != stats.size())
        throw std::invalid_argument("estimate_uatf_terms: UE list not aligned with stats");

    const arma::uword n = cfg.n_antennas;
    const std::size_t n_ues = ues.size();
    const double noise_w = cfg.noise_power_w();
    const double noise_amp = std::sqrt(noise_w);

    // Index bookkeeping: the desired UE, the estimated set D_n (desired+known)
    // and the unknown set D_u.
    std::size_t target = n_ues;
    std::vector<std::size_t> dn, du;
    for (std::size_t i = 0; i < n_ues; ++i)
    {
        if (ues[i].pilot < 0 || ues[i].pilot >= cfg.tau_p)
            throw std::invalid_argument("estimate_uatf_terms: UE without a valid pilot");
        if (ues[i].category == UeCategory::Unknown)
        {
            du.push_back(i);
            continue;
        }
        dn.push_back(i);
        if (ues[i].category == UeCategory::Desired)
        {
            if (target != n_ues)
                throw std::invalid_argument("estimate_uatf_terms: multiple desired UEs");
            target = i;
        }
    }
    if (target == n_ues)
        throw std::invalid_argument("estimate_uatf_terms: no desired UE");
    std::size_t target_dn = 0;
    while (dn[target_dn] != target)
        ++target_dn;

    // Per-UE correlation factors, and per-D_n estimator matrices
    //   E_i = sqrt(tau_p p_i) (tau_p p_i R_i + noise I)^{-1} R_i
    // (the two factors commute, so applying E to y reproduces the
    // estimate_channel result up to rounding).
    std::vector<arma::cx_mat> factor(n_ues);
    for (std::size_t i = 0; i < n_ues; ++i)
        factor[i] = psd_factor(stats[i].R);
    std::vector<arma::cx_mat> estimator(dn.size());
    for (std::size_t j = 0; j < dn.size(); ++j)
    {
        const std::size_t i = dn[j];
        const double scale = cfg.tau_p * ues[i].power_w();
        arma::cx_mat A = scale * stats[i].R;
        A.diag() += noise_w;
        estimator[j] = std::sqrt(scale) * hermitian_solve(A, stats[i].R);
    }

    // Preallocated workspace for the realization loop.
    arma::cx_mat h(n, n_ues), y(n, cfg.tau_p), h_hat(n, dn.size());
    arma::cx_mat gram(n, n), w(n, dn.size());
    arma::cx_vec g(n), v(n);
    arma::cx_rowvec prods(n_ues);

    std::complex<double> acc_z(0.0, 0.0);
    double acc_dn = 0.0, acc_du = 0.0, acc_v2 = 0.0;

    const double p_target = ues[target].power_w();
    for (long m = 0; m < m_realizations; ++m)
    {
        // Channels h_i = F_i g, then noise for every pilot slot, then pilot
        // sums: the stream consumption order matches draw_channels exactly.
        for (std::size_t i = 0; i < n_ues; ++i)
        {
            for (arma::uword r = 0; r < n; ++r)
                g(r) = rng.cnormal();
            h.col(i) = factor[i] * g;
        }
        for (int t = 0; t < cfg.tau_p; ++t)
            for (arma::uword r = 0; r < n; ++r)
                y(r, t) = noise_amp * rng.cnormal();
        for (std::size_t i = 0; i < n_ues; ++i)
            y.col(ues[i].pilot) += std::sqrt(cfg.tau_p * ues[i].power_w()) * h.col(i);

        for (std::size_t j = 0; j < dn.size(); ++j)
            h_hat.col(j) = estimator[j] * y.col(ues[dn[j]].pilot);

        if (scheme == CombinerScheme::MR)
        {
            const double nrm2 =
                std::real(arma::cdot(h_hat.col(target_dn), h_hat.col(target_dn)));
            if (!(nrm2 > 0.0) || !std::isfinite(nrm2))
                throw DegenerateCombinerError("estimate_uatf_terms: zero MR channel estimate");
            v = h_hat.col(target_dn) / nrm2;
        }
        else
        {
            for (std::size_t j = 0; j < dn.size(); ++j)
                w.col(j) = std::sqrt(ues[dn[j]].power_w()) * h_hat.col(j);
            gram = w * w.t();
            gram.diag() += noise_w;
            v = p_target * h_hat.col(target_dn);
            if (!cholesky_solve_inplace(gram, v))
                throw SingularMatrixError("estimate_uatf_terms: RZF system singular");
        }

        prods = v.t() * h;
        acc_z += prods(target);
        double s = 0.0;
        for (std::size_t j = 0; j < dn.size(); ++j)
            s += ues[dn[j]].power_w() * std::norm(prods(dn[j]));
        acc_dn += s;
        s = 0.0;
        for (std::size_t i : du)
            s += ues[i].power_w() * std::norm(prods(i));
        acc_du += s;
        acc_v2 += std::real(arma::cdot(v, v));
    }

    const double inv_m = 1.0 / static_cast<double>(m_realizations);
    const std::complex<double> mean_z = acc_z * inv_m;

    UatfTerms terms;
    terms.ds_sq = p_target * std::norm(mean_z);
    terms.iui_u = acc_du * inv_m;
    terms.iusi_n_raw = acc_dn * inv_m - terms.ds_sq;
    terms.iusi_n = std::max(terms.iusi_n_raw, 0.0);
    terms.noise_eff = noise_w * acc_v2 * inv_m;
    terms.n_realizations = m_realizations;
    return terms;
}

std::pair<double, double> sinr_and_se(const UatfTerms& terms, const SystemConfig& cfg)
{
    if (!(terms.noise_eff > 0.0))
        throw std::domain_error("sinr_and_se: effective noise must be positive");
    const double sinr = terms.ds_sq / (terms.iui_u + terms.iusi_n + terms.noise_eff);
    const double se =
        (static_cast<double>(cfg.tau_u()) / cfg.tau_c) * std::log2(1.0 + sinr);
    return {sinr, se};
}

} // namespace ulsim
