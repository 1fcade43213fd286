#pragma once

#include <cmath>
#include <stdexcept>

namespace bo {

inline constexpr double kPi = 3.14159265358979323846;

// Absolute tolerance on the xi = 0 Fourier coefficient below which a field
// counts as mean-free.
inline constexpr double kMeanTol = 1e-10;

// Uniform grid of M points on the circle of circumference 2*pi*lambda.
//
// Spectral slots follow the usual FFT layout: slot k holds the signed
// harmonic n = k for k <= M/2 and n = k - M otherwise, so the frequency
// lattice is xi = n/lambda with n in {-M/2+1, ..., M/2}.  The n = M/2 slot
// (Nyquist) is kept identically zero by every constructor and operator.
//
// Norms use the fixed measure convention: every sum over the frequency
// lattice carries the weight 1/(2*pi*lambda) per mode, so that Plancherel is
// exact and the s = 0 Sobolev norm coincides with L^2 of the samples.
class Grid {
  public:
    Grid(double lambda, int m) : lambda_(lambda), m_(m) {
        if (!(lambda >= 1.0))
            throw std::invalid_argument("grid: lambda must be >= 1");
        if (m < 8 || (m & (m - 1)) != 0)
            throw std::invalid_argument("grid: M must be a power of two, M >= 8");
    }

    double lambda() const { return lambda_; }
    int size() const { return m_; }
    double period() const { return 2.0 * kPi * lambda_; }
    double dx() const { return period() / m_; }
    double x(int j) const { return dx() * j; }

    // Signed harmonic held by spectral slot k.
    int harmonic(int k) const { return k <= m_ / 2 ? k : k - m_; }
    // Frequency xi = n/lambda for slot k.
    double frequency(int k) const { return harmonic(k) / lambda_; }
    bool is_nyquist(int k) const { return k == m_ / 2; }

    // Measure weight per frequency-lattice point (see class comment).
    double mode_weight() const { return 1.0 / period(); }

    bool operator==(const Grid& o) const { return lambda_ == o.lambda_ && m_ == o.m_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

  private:
    double lambda_;
    int m_;
};

}  // namespace bo
