#pragma once

#include <cstdint>

#include "bo/field.hpp"

namespace bo {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so samples are reproducible under any evaluation order and safe
// to draw from concurrent workers.  The mixer is splitmix64.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    double uniform(std::uint64_t counter) const {
        // 53 random bits into [0, 1).
        return static_cast<double>(mix(counter) >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; draw i consumes counters 2i and 2i+1.
    double gaussian(std::uint64_t i) const;

  private:
    std::uint64_t mix(std::uint64_t counter) const;
    std::uint64_t seed_;
    std::uint64_t stream_;
};

// Mean-free real field with independent Gaussian coefficients on harmonics
// 1 <= |n| <= band, normalized to unit L^2 norm.
RealField random_band_limited(const Grid& grid, int band, std::uint64_t seed,
                              std::uint64_t stream);

}  // namespace bo
