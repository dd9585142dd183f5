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

#ifndef ULSIM_RANDOM_HPP
#define ULSIM_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ulsim
{

// Counter-based stream derivation: child streams are seeded by mixing the parent
// identity with the child index through SplitMix64.  Mixing depends only on the
// stream identity, never on how many variates the parent has produced, so the
// same tree of streams is reproduced regardless of evaluation order or thread
// scheduling.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic random stream: a seeded mt19937_64 plus the identity needed to
// derive independent child streams.  All variate generation is implemented
// explicitly on top of raw 64-bit draws so that sequences are identical across
// platforms and standard-library versions.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed) : identity_(seed), engine_(splitmix64(seed)) {}

    // Derive the child stream with the given index.  Children of distinct
    // (identity, index) pairs are statistically independent for all practical
    // purposes.  Derivation reads only stored identity, not engine state.
    RandomStream child(std::uint64_t index) const
    {
        return RandomStream(splitmix64(identity_ ^ splitmix64(index)));
    }

    std::uint64_t identity() const { return identity_; }

    std::uint64_t bits() { return engine_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; used where a logarithm must not see zero.
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    // Uniform integer in [0, bound).  Rejection sampling, exactly unbiased.
    std::uint64_t uniform_int(std::uint64_t bound)
    {
        if (bound == 0)
            throw std::invalid_argument("RandomStream::uniform_int: bound must be positive");
        const std::uint64_t threshold = (-bound) % bound;
        for (;;)
        {
            const std::uint64_t r = engine_();
            if (r >= threshold)
                return r % bound;
        }
    }

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double t = 6.283185307179586476925286766559 * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // Circularly-symmetric complex normal CN(0, 1): real and imaginary parts are
    // independent N(0, 1/2).  Uses one fresh Box-Muller pair per call (the cache
    // is bypassed so complex draws always consume exactly two uniforms).
    std::complex<double> cnormal()
    {
        const double r = std::sqrt(-std::log(uniform_pos()));
        const double t = 6.283185307179586476925286766559 * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

  private:
    std::uint64_t identity_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ulsim

#endif
