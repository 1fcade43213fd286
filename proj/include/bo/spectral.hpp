#pragma once

#include <vector>

#include "bo/field.hpp"

namespace bo {

// Sharp spectral projections.  Thresholds compare the frequency xi = n/lambda,
// not the harmonic index.
enum class Projection {
    plus,       // xi > 0
    minus,      // xi < 0
    zero,       // xi = 0
    le,         // |xi| <= a
    gt,         // |xi| > a
    strict_gt,  // xi > a (signed)
    strict_lt,  // xi < a (signed)
};

SpectralField project(const SpectralField& g, Projection p, double a = 0.0);

// Complex conjugate of the signal: (conj g)^(xi) = conj(g^(-xi)).
// Real-signal fields are fixed points.
SpectralField conjugate(const SpectralField& g);

// Periodic Hilbert transform, multiplier -i sgn(xi), zero on the mean.
SpectralField hilbert(const SpectralField& g);

// d/dx, multiplier i xi.
SpectralField derivative(const SpectralField& g);

// The mean-free antiderivative, multiplier 1/(i xi).  Requires a mean-free
// input (|coeff(0)| <= kMeanTol) and returns a mean-free result.
SpectralField antiderivative(const SpectralField& g);

// |D|^alpha, multiplier |xi|^alpha.  The zero mode is annihilated for
// alpha > 0, passed through for alpha = 0, and requires a mean-free input for
// alpha < 0.
SpectralField fractional(const SpectralField& g, double alpha);

// <D>^alpha, multiplier (1 + xi^2)^(alpha/2).
SpectralField bessel(const SpectralField& g, double alpha);

// Free group of the linearized equation u_t + H u_xx = 0: multiplier
// e^{-i xi |xi| t}.  Unitary on every Sobolev norm.
SpectralField free_evolve(const SpectralField& g, double t);

// Sobolev norm under the fixed measure convention (see Grid), so
// sobolev_norm(g, 0) equals the L^2 norm of the samples.
double sobolev_norm(const SpectralField& g, double s);

// L^q of the samples by exact uniform quadrature; q = inf gives the sample
// sup.  Overloads for complex sample sets share the measure convention.
double lebesgue_norm(const RealField& u, double q);
double lebesgue_norm(const std::vector<cplx>& samples, double dx, double q);

// Zero-pad the spectrum onto a finer grid with the same period (factor_num /
// factor_den > 1, result size rounded up to the next even integer).  Inverse
// of truncate_spectrum on band-limited data.
SpectralField pad_spectrum(const SpectralField& g, int fine_m);
// Restrict a fine-grid spectrum to the coarse band (Nyquist zeroed).
SpectralField truncate_spectrum(const SpectralField& g, const Grid& coarse);

// Alias-free pointwise product: both operands are padded onto a grid of
// oversample * M points, multiplied there, and truncated back.  oversample = 2
// is exact for quadratics and leaves only the analytic tail of smooth
// non-polynomial factors.
SpectralField multiply(const SpectralField& a, const SpectralField& b,
                       int oversample = 2);

// Convenience: exp(i scale * F) sampled on the oversampled grid of F.
// F must be real valued; samples are exact because F is band limited.
std::vector<cplx> phase_samples(const SpectralField& f_hat, double scale,
                                int oversample);

}  // namespace bo
