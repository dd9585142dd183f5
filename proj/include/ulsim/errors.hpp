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

#ifndef ULSIM_ERRORS_HPP
#define ULSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ulsim
{

// Invalid or inconsistent configuration (bad JSON, out-of-range parameter).
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Base class for runtime numerical failures (as opposed to domain errors on inputs).
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Cholesky factorization failed: matrix is numerically singular / not positive definite.
class SingularMatrixError : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

// Combining vector cannot be formed (e.g. zero channel estimate for MR).
class DegenerateCombinerError : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

// Sample set carries no information (fewer than two samples or zero variance).
class DegenerateStatisticsError : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

// Posterior evaluation with zeta = 0 (observation coincides with the known mean).
class DegenerateObservationError : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

// Moment-matched fit is undefined (non-positive mean or variance).
class FitError : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

} // namespace ulsim

#endif
