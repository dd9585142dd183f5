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

#ifndef ULSIM_LINALG_HPP
#define ULSIM_LINALG_HPP

#include <armadillo>

#include "ulsim/random.hpp"

namespace ulsim
{

// Solve A x = b for Hermitian positive definite A via Cholesky factorization
// with one step of extended-precision iterative refinement.  The residual
// ||A x - b||_2 is driven to about 1e-10 ||b||_2 for condition numbers up to
// roughly 1e7 (beyond that, double precision itself limits the attainable
// residual).  Throws SingularMatrixError if A is numerically singular or not
// positive definite, std::domain_error if A is not Hermitian or shapes do not
// match.
arma::cx_vec hermitian_solve(const arma::cx_mat& A, const arma::cx_vec& b);

// Multi-right-hand-side variant; the factorization is shared across columns.
arma::cx_mat hermitian_solve(const arma::cx_mat& A, const arma::cx_mat& B);

// Fast path for inner Monte Carlo loops: factors A in place (destroying its
// contents) and overwrites x (the right-hand side on entry) with the
// solution.  Same factorization as hermitian_solve but without the input
// validation and refinement passes.  Returns false if A is numerically
// singular / not positive definite.
bool cholesky_solve_inplace(arma::cx_mat& A, arma::cx_vec& x);

// Factor a Hermitian positive semidefinite matrix R as F F^H using the
// eigendecomposition, clamping small negative eigenvalues (rounding debris) to
// zero.  Eigenvalues below -1e-10 * trace(R) mean the input is genuinely not
// PSD and raise std::domain_error.  The returned F is N x N and may be rank
// deficient.
arma::cx_mat psd_factor(const arma::cx_mat& R);

// Real symmetric variant of psd_factor (used for shadowing covariances).
arma::mat psd_factor(const arma::mat& S);

// Draw x = F g with g a vector of i.i.d. CN(0,1) entries, so that
// E[x x^H] = F F^H.  The factor is typically produced by psd_factor.
arma::cx_vec draw_correlated_cnormal(const arma::cx_mat& factor, RandomStream& rng);

// Draw a zero-mean circularly-symmetric Gaussian vector with covariance R
// (Hermitian PSD): psd_factor followed by draw_correlated_cnormal.  Loops
// should factor once and reuse it instead.
arma::cx_vec sample_correlated_complex_gaussian(const arma::cx_mat& R, RandomStream& rng);

} // namespace ulsim

#endif
