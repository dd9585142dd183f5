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

#ifndef ULSIM_EXPERIMENTS_HPP
#define ULSIM_EXPERIMENTS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "ulsim/bayes.hpp"
#include "ulsim/config.hpp"
#include "ulsim/outage.hpp"
#include "ulsim/receiver.hpp"

namespace ulsim
{

// Full description of one Monte Carlo experiment (one curve / CDF).
struct ExperimentPlan
{
    SystemConfig cfg;
    double r_desired_m = 100.0;
    int k_u = 40;
    CombinerScheme scheme = CombinerScheme::RZF;
    int n_drops = 2000;
    int m_small_scale = 500;
    double calibration_fraction = 0.5;
    std::vector<double> epsilons = {0.05, 0.1, 0.2, 0.3};
    std::vector<double> margins = {2.0, 3.10, 5.0};

    // Throws ConfigError on violated invariants (n_drops >= 100, calibration
    // set >= 50 drops, epsilon/margin ranges, cfg.validate()).  Enforced at
    // the CLI boundary; library callers may run smaller ad-hoc plans.
    void validate() const;
};

// Per-drop outcome: the UatF terms plus the derived SINR/SE.
struct DropResult
{
    int drop_index = 0;
    UatfTerms terms;
    double sinr = 0.0;
    double se = 0.0;
};

// Run the drop loop: known geometry and desired/known shadowing frozen once
// from reserved child streams of cfg.seed; per drop d, stream child(d) drives
// unknown positions, pilot picks, conditional shadowing, and the small-scale
// Monte Carlo.  Results are ordered by drop_index and bit-identical for any
// worker count.
std::vector<DropResult> run_drops(const ExperimentPlan& plan, int n_threads = 1);

// Deterministic calibration / held-out split: the first
// round(calibration_fraction * n) drops calibrate, the rest are held out.
struct SplitResults
{
    std::vector<DropResult> calibration;
    std::vector<DropResult> heldout;
};
SplitResults split_results(const std::vector<DropResult>& results, double calibration_fraction);

// Everything the analytical model needs, fitted on calibration drops only:
// the moment-matched IG for the unknown interference power and the
// quasi-static averages of the remaining UatF terms.
struct CalibrationFit
{
    SampleStats interference_stats;
    InverseGammaParams ig;
    UatfTerms quasi_static;
};
CalibrationFit calibrate(const std::vector<DropResult>& calibration);

// Analytical SINR CDF value Pr[SINR <= T] under the fitted model.
double analytical_sinr_cdf_at(const CalibrationFit& fit, double T);

// Analytical SINR CDF on a grid of (linear) SINR thresholds; fits the model
// on the given calibration drops internally.
std::vector<std::pair<double, double>> analytical_sinr_cdf(
    const std::vector<DropResult>& calibration, const std::vector<double>& grid);

// Epsilon-outage curve: for each target epsilon of the plan, the model rate
// from the calibration fit and the fraction of held-out drops whose SINR falls
// below the chosen threshold.
struct OutageCurvePoint
{
    double epsilon = 0.0;
    double se_model = 0.0;
    double empirical_outage = 0.0;
};
std::vector<OutageCurvePoint> epsilon_outage_curve(const ExperimentPlan& plan,
                                                   const std::vector<DropResult>& results);

// Fixed-margin baseline curve over the plan's margins; empirical outage is the
// fraction of held-out drops with SINR below sinr_bl / m.
struct BaselineCurvePoint
{
    double margin = 0.0;
    double se = 0.0;
    double empirical_outage = 0.0;
};
std::vector<BaselineCurvePoint> baseline_curve(const ExperimentPlan& plan,
                                               const std::vector<DropResult>& results);

// Kolmogorov-Smirnov distance between the empirical CDF of the samples and a
// continuous CDF (evaluated at both sides of every jump).
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

} // namespace ulsim

#endif
