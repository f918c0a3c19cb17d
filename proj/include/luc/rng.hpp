// SPDX-License-Identifier: Apache-2.0
//
// Portable random streams. Every consumer derives an independent stream from
// (seed, stream index) so results never depend on thread scheduling:
//
//   mix(z)    = SplitMix64 finalizer
//   state[i]  = SplitMix64 sequence started at seed ^ mix(stream + 0x632BE59BD9B4E019)
//   next()    = xoshiro256** on state
//   uniform() = (next() >> 11) · 2⁻⁵³                 in [0, 1)
//   normal()  = √(−2 ln(1 − u₁)) · cos(2π u₂)          one variate per two uniforms

#pragma once

#include <array>
#include <cstdint>

namespace luc {

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next();
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::array<std::uint64_t, 4> s_{};
};

/// SplitMix64 finalizer; exposed for deriving sub-seeds.
std::uint64_t mix64(std::uint64_t z);

} // namespace luc
