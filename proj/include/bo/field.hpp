#pragma once

#include <complex>
#include <vector>

#include "bo/errors.hpp"
#include "bo/grid.hpp"

namespace bo {

using cplx = std::complex<double>;

// Real-valued samples on the grid points x_j = j * dx.
class RealField {
  public:
    RealField(const Grid& grid, std::vector<double> samples)
        : grid_(grid), s_(std::move(samples)) {
        if (static_cast<int>(s_.size()) != grid_.size())
            throw std::invalid_argument("real field: sample count != M");
    }
    explicit RealField(const Grid& grid) : grid_(grid), s_(grid.size(), 0.0) {}

    const Grid& grid() const { return grid_; }
    const std::vector<double>& samples() const { return s_; }
    std::vector<double>& samples() { return s_; }
    double operator[](int j) const { return s_[j]; }

    // Trapezoid rule, which on a uniform periodic grid is the plain Riemann
    // sum and integrates band-limited signals exactly.
    double integral() const {
        double acc = 0.0;
        for (double v : s_) acc += v;
        return acc * grid_.dx();
    }
    double mean() const { return integral() / grid_.period(); }
    bool mean_free() const;

  private:
    Grid grid_;
    std::vector<double> s_;
};

// Fourier coefficients coeff(xi) ~ \int e^{-i xi x} u(x) dx, stored in FFT
// slot order (see Grid).  The Nyquist slot is identically zero.  A field
// flagged real satisfies coeff(-xi) = conj(coeff(xi)).
class SpectralField {
  public:
    SpectralField(const Grid& grid, std::vector<cplx> coeffs, bool real_signal)
        : grid_(grid), c_(std::move(coeffs)), real_(real_signal) {
        if (static_cast<int>(c_.size()) != grid_.size())
            throw std::invalid_argument("spectral field: coeff count != M");
        c_[grid_.size() / 2] = 0.0;
    }
    explicit SpectralField(const Grid& grid, bool real_signal = true)
        : grid_(grid), c_(grid.size(), cplx(0.0)), real_(real_signal) {}

    const Grid& grid() const { return grid_; }
    const std::vector<cplx>& coeffs() const { return c_; }
    std::vector<cplx>& coeffs() { return c_; }
    cplx operator[](int k) const { return c_[k]; }
    bool real_signal() const { return real_; }
    void set_real_signal(bool r) { real_ = r; }

    // Coefficient of the signed harmonic n (n = M/2 aliases the zero Nyquist
    // slot).
    cplx harmonic(int n) const { return c_[n >= 0 ? n : n + grid_.size()]; }

    double zero_mode_abs() const { return std::abs(c_[0]); }
    bool mean_free() const { return zero_mode_abs() <= kMeanTol; }
    void require_mean_free() const {
        if (!mean_free()) throw MeanNotZeroError(zero_mode_abs());
    }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(cplx a);

  private:
    Grid grid_;
    std::vector<cplx> c_;
    bool real_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx a, SpectralField g);

SpectralField to_spectral(const RealField& u);
RealField to_physical(const SpectralField& g);

// Physical samples of an arbitrary (not necessarily real) spectral field.
std::vector<cplx> to_samples(const SpectralField& g);
// Inverse of to_samples: spectrum of complex samples on the same grid.
SpectralField from_samples(const Grid& grid, const std::vector<cplx>& samples,
                           bool real_signal = false);

// Relative deviation from Hermitian symmetry, 0 for exactly real signals.
double hermitian_defect(const SpectralField& g);

}  // namespace bo
