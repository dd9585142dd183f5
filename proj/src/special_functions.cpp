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

#include "ulsim/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ulsim/errors.hpp"

namespace ulsim
{

namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
constexpr int kMaxIter = 20000;

// Series representation of P(a, x); converges fast for x < a + 1.
double gamma_series(double a, double x)
{
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kMaxIter; ++n)
    {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps)
            return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
    throw NumericalError("reg_lower_gamma: series did not converge");
}

// Continued fraction for Q(a, x) by the modified Lentz method; converges fast
// for x > a + 1.
double gamma_cont_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i)
    {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin)
            d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin)
            c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
    }
    throw NumericalError("reg_upper_gamma: continued fraction did not converge");
}

void check_gamma_args(double a, double x)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::domain_error("incomplete gamma: shape a must be positive and finite");
    if (!(x >= 0.0))
        throw std::domain_error("incomplete gamma: argument x must be non-negative");
}

} // namespace

double log_gamma(double a)
{
    if (!(a > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");

    // Lanczos approximation, g = 7, 9 terms.
    static const double coef[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,       -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

    const double z = a - 1.0;
    double sum = coef[0];
    for (int i = 1; i < 9; ++i)
        sum += coef[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    return 0.91893853320467274178 // ln(sqrt(2*pi))
           + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double reg_lower_gamma(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return gamma_series(a, x);
    return 1.0 - gamma_cont_fraction(a, x);
}

double reg_upper_gamma(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return 1.0 - gamma_series(a, x);
    return gamma_cont_fraction(a, x);
}

double inv_reg_upper_gamma(double a, double q)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::domain_error("inv_reg_upper_gamma: shape a must be positive and finite");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::domain_error("inv_reg_upper_gamma: probability must lie in [0, 1]");
    if (q == 1.0)
        return 0.0;
    if (q == 0.0)
        return std::numeric_limits<double>::infinity();

    const double lgam = log_gamma(a);
    const double p = 1.0 - q;

    // Initial guess (Numerical Recipes): Wilson-Hilferty for a > 1, otherwise a
    // low-order fit to the small-a quantile.
    double x;
    if (a > 1.0)
    {
        const double pp = (p < 0.5) ? p : 1.0 - p;
        double t = std::sqrt(-2.0 * std::log(pp));
        // Rational approximation to the standard normal quantile.
        double gl = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
        if (p < 0.5)
            gl = -gl;
        const double cube = 1.0 - 1.0 / (9.0 * a) - gl / (3.0 * std::sqrt(a));
        x = a * cube * cube * cube;
    }
    else
    {
        const double t = 1.0 - a * (0.253 + a * 0.12);
        if (p < t)
            x = std::pow(p / t, 1.0 / a);
        else
            x = 1.0 - std::log(1.0 - (p - t) / (1.0 - t));
    }
    // For extreme upper tails (p rounds to 1) the guess above saturates; use the
    // asymptotic tail expansion Q(a, x) ~ x^(a-1) e^(-x)/Gamma(a) instead.
    if (q < 1e-14)
    {
        x = -std::log(q) - lgam;
        if (x < a + 1.0)
            x = a + 1.0;
        for (int i = 0; i < 4; ++i)
            x = -std::log(q) - lgam + (a - 1.0) * std::log(x);
    }
    if (!(x > 0.0) || !std::isfinite(x))
        x = a;

    // Newton iteration on Q(a, x) - q with a maintained bracket; Q is strictly
    // decreasing so any evaluation tightens the bracket.  Bisection (or
    // doubling while the upper end is still open) recovers whenever a Newton
    // step leaves the bracket or the derivative underflows.
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it)
    {
        const double f = reg_upper_gamma(a, x) - q;
        if (f > 0.0)
            lo = x;
        else if (f < 0.0)
            hi = x;
        else
            return x;

        const double dq = -std::exp((a - 1.0) * std::log(x) - x - lgam);
        double x_next = (dq != 0.0 && std::isfinite(dq)) ? x - f / dq : lo;
        if (!(x_next > lo && x_next < hi) || !std::isfinite(x_next))
            x_next = std::isinf(hi) ? 2.0 * (lo + 1.0) : 0.5 * (lo + hi);

        const double step = std::abs(x_next - x);
        x = x_next;
        if (step <= 1e-14 * x && std::isfinite(hi))
            return x;
        if (std::isfinite(hi) && hi - lo <= 1e-14 * lo)
            return 0.5 * (lo + hi);
    }
    throw NumericalError("inv_reg_upper_gamma: iteration did not converge");
}

} // namespace ulsim
