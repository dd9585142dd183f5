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

#include "ulsim/linalg.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "ulsim/errors.hpp"

namespace ulsim
{

namespace
{

using cxd = std::complex<double>;

void check_hermitian(const arma::cx_mat& A, const char* who)
{
    if (A.n_rows != A.n_cols || A.n_rows == 0)
        throw std::domain_error(std::string(who) + ": matrix must be square and non-empty");
    double amax = 0.0;
    for (arma::uword j = 0; j < A.n_cols; ++j)
        for (arma::uword i = 0; i < A.n_rows; ++i)
            amax = std::max(amax, std::abs(A(i, j)));
    if (!std::isfinite(amax))
        throw std::domain_error(std::string(who) + ": matrix has non-finite entries");
    const double tol = 1e-8 * (1.0 + amax);
    for (arma::uword j = 0; j < A.n_cols; ++j)
        for (arma::uword i = 0; i <= j; ++i)
            if (std::abs(A(i, j) - std::conj(A(j, i))) > tol)
                throw std::domain_error(std::string(who) + ": matrix is not Hermitian");
}

// In-place lower Cholesky factorization, L written over the lower triangle.
// Returns false when a pivot is non-positive or non-finite.
bool cholesky_lower(arma::cx_mat& A)
{
    const arma::uword n = A.n_rows;
    for (arma::uword j = 0; j < n; ++j)
    {
        double diag = A(j, j).real();
        for (arma::uword k = 0; k < j; ++k)
            diag -= std::norm(A(j, k));
        if (!(diag > 0.0) || !std::isfinite(diag))
            return false;
        const double ljj = std::sqrt(diag);
        A(j, j) = ljj;
        for (arma::uword i = j + 1; i < n; ++i)
        {
            cxd s = A(i, j);
            for (arma::uword k = 0; k < j; ++k)
                s -= A(i, k) * std::conj(A(j, k));
            A(i, j) = s / ljj;
        }
    }
    return true;
}

// Solve L L^H x = b given the factor; x overwrites b.
void cholesky_solve(const arma::cx_mat& L, arma::cx_vec& b)
{
    const arma::uword n = L.n_rows;
    for (arma::uword i = 0; i < n; ++i)
    {
        cxd s = b(i);
        for (arma::uword k = 0; k < i; ++k)
            s -= L(i, k) * b(k);
        b(i) = s / L(i, i).real();
    }
    for (arma::uword ii = n; ii-- > 0;)
    {
        cxd s = b(ii);
        for (arma::uword k = ii + 1; k < n; ++k)
            s -= std::conj(L(k, ii)) * b(k);
        b(ii) = s / L(ii, ii).real();
    }
}

// Residual r = b - A x accumulated in extended precision.
arma::cx_vec residual(const arma::cx_mat& A, const arma::cx_vec& x, const arma::cx_vec& b)
{
    const arma::uword n = A.n_rows;
    arma::cx_vec r(n);
    for (arma::uword i = 0; i < n; ++i)
    {
        long double re = b(i).real();
        long double im = b(i).imag();
        for (arma::uword j = 0; j < n; ++j)
        {
            const cxd aij = A(i, j);
            const cxd xj = x(j);
            re -= static_cast<long double>(aij.real()) * xj.real() -
                  static_cast<long double>(aij.imag()) * xj.imag();
            im -= static_cast<long double>(aij.real()) * xj.imag() +
                  static_cast<long double>(aij.imag()) * xj.real();
        }
        r(i) = cxd(static_cast<double>(re), static_cast<double>(im));
    }
    return r;
}

arma::cx_vec solve_with_factor(const arma::cx_mat& A, const arma::cx_mat& L, const arma::cx_vec& b)
{
    arma::cx_vec x = b;
    cholesky_solve(L, x);
    // Iterative refinement: with the residual formed in extended precision,
    // one or two corrections reach the target residual whenever the
    // conditioning allows it at all.
    const double target = 1e-11 * arma::norm(b);
    for (int pass = 0; pass < 2; ++pass)
    {
        arma::cx_vec r = residual(A, x, b);
        if (arma::norm(r) <= target)
            break;
        cholesky_solve(L, r);
        x += r;
    }
    return x;
}

} // namespace

arma::cx_vec hermitian_solve(const arma::cx_mat& A, const arma::cx_vec& b)
{
    check_hermitian(A, "hermitian_solve");
    if (b.n_elem != A.n_rows)
        throw std::invalid_argument("hermitian_solve: right-hand side length mismatch");
    arma::cx_mat L = A;
    if (!cholesky_lower(L))
        throw SingularMatrixError("hermitian_solve: matrix is numerically singular "
                                  "(Cholesky pivot not positive)");
    return solve_with_factor(A, L, b);
}

arma::cx_mat hermitian_solve(const arma::cx_mat& A, const arma::cx_mat& B)
{
    check_hermitian(A, "hermitian_solve");
    if (B.n_rows != A.n_rows)
        throw std::invalid_argument("hermitian_solve: right-hand side row count mismatch");
    arma::cx_mat L = A;
    if (!cholesky_lower(L))
        throw SingularMatrixError("hermitian_solve: matrix is numerically singular "
                                  "(Cholesky pivot not positive)");
    arma::cx_mat X(B.n_rows, B.n_cols);
    for (arma::uword j = 0; j < B.n_cols; ++j)
        X.col(j) = solve_with_factor(A, L, arma::cx_vec(B.col(j)));
    return X;
}

bool cholesky_solve_inplace(arma::cx_mat& A, arma::cx_vec& x)
{
    if (A.n_rows != A.n_cols || A.n_rows == 0 || x.n_elem != A.n_rows)
        throw std::invalid_argument("cholesky_solve_inplace: shape mismatch");
    if (!cholesky_lower(A))
        return false;
    cholesky_solve(A, x);
    return true;
}

arma::cx_mat psd_factor(const arma::cx_mat& R)
{
    check_hermitian(R, "psd_factor");
    arma::vec eval;
    arma::cx_mat evec;
    if (!arma::eig_sym(eval, evec, R))
        throw NumericalError("psd_factor: eigendecomposition failed");
    const double tr = arma::trace(arma::real(R));
    if (!(tr >= 0.0))
        throw std::domain_error("psd_factor: matrix has negative trace, not PSD");
    const double tol = 1e-10 * tr;
    if (eval.min() < -tol)
        throw std::domain_error("psd_factor: matrix is not positive semidefinite "
                                "(eigenvalue below tolerance)");
    // Eigenvalues at roundoff scale are numerical zeros of a rank-deficient
    // input; clamping them (instead of feeding them through sqrt, which
    // amplifies eps-sized noise to 1e-8-sized factor columns) keeps draws
    // inside the range of R.
    const double rank_tol = 64.0 * double(eval.n_elem) *
                            std::numeric_limits<double>::epsilon() *
                            std::max(eval.max(), 0.0);
    for (arma::uword i = 0; i < eval.n_elem; ++i)
        eval(i) = eval(i) > rank_tol ? std::sqrt(eval(i)) : 0.0;
    return evec * arma::diagmat(eval);
}

arma::mat psd_factor(const arma::mat& S)
{
    if (S.n_rows != S.n_cols || S.n_rows == 0)
        throw std::domain_error("psd_factor: matrix must be square and non-empty");
    if (!S.is_finite())
        throw std::domain_error("psd_factor: matrix has non-finite entries");
    const double tol_sym = 1e-8 * (1.0 + arma::abs(S).max());
    if (arma::abs(S - S.t()).max() > tol_sym)
        throw std::domain_error("psd_factor: matrix is not symmetric");
    arma::vec eval;
    arma::mat evec;
    if (!arma::eig_sym(eval, evec, S))
        throw NumericalError("psd_factor: eigendecomposition failed");
    const double tr = arma::trace(S);
    if (!(tr >= 0.0))
        throw std::domain_error("psd_factor: matrix has negative trace, not PSD");
    const double tol = 1e-10 * tr;
    if (eval.min() < -tol)
        throw std::domain_error("psd_factor: matrix is not positive semidefinite "
                                "(eigenvalue below tolerance)");
    // Same rank cutoff as the complex overload, see above.
    const double rank_tol = 64.0 * double(eval.n_elem) *
                            std::numeric_limits<double>::epsilon() *
                            std::max(eval.max(), 0.0);
    for (arma::uword i = 0; i < eval.n_elem; ++i)
        eval(i) = eval(i) > rank_tol ? std::sqrt(eval(i)) : 0.0;
    return evec * arma::diagmat(eval);
}

arma::cx_vec draw_correlated_cnormal(const arma::cx_mat& factor, RandomStream& rng)
{
    arma::cx_vec g(factor.n_cols);
    for (arma::uword i = 0; i < g.n_elem; ++i)
        g(i) = rng.cnormal();
    return factor * g;
}

arma::cx_vec sample_correlated_complex_gaussian(const arma::cx_mat& R, RandomStream& rng)
{
    return draw_correlated_cnormal(psd_factor(R), rng);
}

} // namespace ulsim
