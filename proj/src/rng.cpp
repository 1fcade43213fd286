#include "bo/rng.hpp"

#include <cmath>

#include "bo/spectral.hpp"

namespace bo {

std::uint64_t CounterRng::mix(std::uint64_t counter) const {
    // splitmix64 over a key that separates seed, stream and counter.
    std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ull * (stream_ + 1);
    z += 0x9E3779B97F4A7C15ull * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double CounterRng::gaussian(std::uint64_t i) const {
    const double u1 = uniform(2 * i);
    const double u2 = uniform(2 * i + 1);
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * kPi * u2);
}

RealField random_band_limited(const Grid& grid, int band, std::uint64_t seed,
                              std::uint64_t stream) {
    if (band < 1 || band >= grid.size() / 2)
        throw std::invalid_argument("random_band_limited: band out of range");
    CounterRng rng(seed, stream);
    SpectralField g(grid, true);
    for (int n = 1; n <= band; ++n) {
        const cplx c(rng.gaussian(2 * n), rng.gaussian(2 * n + 1));
        // Hermitian pair keeps the samples real.
        g.coeffs()[n] = c;
        g.coeffs()[grid.size() - n] = std::conj(c);
    }
    const double norm = sobolev_norm(g, 0.0);
    if (norm > 0.0) g *= cplx(1.0 / norm);
    return to_physical(g);
}

}  // namespace bo
