#pragma once

#include <array>
#include <cstdint>

#include "gsw/field.hpp"

namespace gsw {

/// Counter-keyed pseudorandom stream: xoshiro256++ state derived from a
/// (seed, stream_id) pair through splitmix64 mixing. Streams with distinct
/// pairs are statistically independent; the same pair always reproduces the
/// same sequence, independent of platform and thread count. Simulation code
/// assigns one stream per trial so results do not depend on scheduling.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() noexcept;

    /// Unbiased uniform integer in [0, n); n must be >= 1.
    std::uint64_t next_below(std::uint64_t n) noexcept;

    /// Standard real normal N(0, 1). Box-Muller, one spare cached.
    double next_gaussian() noexcept;

    /// Standard circularly-symmetric complex normal CN(0, 1):
    /// E[xi] = 0, E[|xi|^2] = 1, real/imag parts independent N(0, 1/2).
    cplx next_cgaussian() noexcept;

  private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace gsw
