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

#ifndef ULSIM_SPECIAL_FUNCTIONS_HPP
#define ULSIM_SPECIAL_FUNCTIONS_HPP

namespace ulsim
{

// Regularized lower incomplete gamma function P(a, x) = gamma(a, x) / Gamma(a),
// for a > 0 and x >= 0.  Series expansion for x < a + 1, continued fraction
// otherwise; absolute accuracy is near machine precision over the supported
// range a in [1e-3, 1e6].
double reg_lower_gamma(double a, double x);

// Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x).
// The branch that converges fastest is evaluated directly, so Q is accurate in
// absolute terms even where it is tiny.
double reg_upper_gamma(double a, double x);

// Inverse of Q(a, .): returns x such that Q(a, x) = q, for q in [0, 1].
// Q(a, .) is strictly decreasing, so q = 1 maps to 0 and q -> 0 maps to
// +infinity.  Newton iteration on Q with bracketed bisection fallback;
// relative accuracy around 1e-12 away from the endpoints.
double inv_reg_upper_gamma(double a, double q);

// Natural log of the Gamma function, ln Gamma(a), for a > 0.
// Lanczos approximation, accurate to about 1e-13 relative.
double log_gamma(double a);

} // namespace ulsim

#endif
