#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bo/evolution.hpp"
#include "bo/field.hpp"

namespace bo {

// Time-axis analysis window.  smooth equals 1 on the middle half of the
// window with C^2 roll-offs (6r^5 - 15r^4 + 10r^3) to 0 at both ends;
// boxcar equals 1 everywhere.
enum class Window { smooth, boxcar };

struct TaperSpec {
    Window window = Window::smooth;

    // psi_n over the n_t retained samples; symmetric, values in [0, 1].
    std::vector<double> samples(int n_t) const;
    // sqrt(dt * sum psi_n^2), the L^2_t size of the window.
    double l2_norm(int n_t, double dt) const;
};

// Discrete space-time spectrum of one analysis window of a trajectory.
//
// The window is the first n_t samples of the trajectory, n_t the largest
// power of two not exceeding its length.  They are multiplied by the taper,
// zero-padded to n_tau = 2 n_t slots, and transformed with the integral
// convention coeff = step * DFT on both axes, so the tau lattice has spacing
// 2 pi / t_padded and the measure weight per (tau, xi) lattice point is
// 1 / (t_padded * 2 pi lambda).  Under that weight the plain L^2 of the
// coefficients equals the L^2_{t,x} of the tapered signal (discrete
// Parseval).  Both Nyquist planes are kept identically zero, so negation
// (tau, xi) -> (-tau, -xi) is a bijection of the kept lattice and
// conjugation of the signal is an exact isometry of every norm below.
class SpaceTimeSpectrum {
  public:
    SpaceTimeSpectrum(Grid grid, int n_t, double dt, TaperSpec taper,
                      std::vector<cplx> data);

    const Grid& grid() const { return grid_; }
    int n_t() const { return n_t_; }
    int n_tau() const { return 2 * n_t_; }
    double dt() const { return dt_; }
    double t_padded() const { return n_tau() * dt_; }
    const TaperSpec& taper() const { return taper_; }

    // Signed tau harmonic held by time slot m.
    int tau_harmonic(int m) const { return m <= n_t_ ? m : m - n_tau(); }
    double tau(int m) const { return 2.0 * kPi * tau_harmonic(m) / t_padded(); }
    // sigma = tau + xi |xi|, the distance to the free dispersion surface,
    // evaluated with the exact continuum symbol at the lattice point.
    double sigma(int m, int k) const {
        const double xi = grid_.frequency(k);
        return tau(m) + xi * std::abs(xi);
    }

    cplx data(int m, int k) const {
        return d_[std::size_t(m) * grid_.size() + k];
    }
    const std::vector<cplx>& coeffs() const { return d_; }
    std::vector<cplx>& coeffs() { return d_; }

    // Measure weight per lattice point, 1 / (t_padded * 2 pi lambda).
    double weight() const { return grid_.mode_weight() / t_padded(); }

  private:
    Grid grid_;
    int n_t_;
    double dt_;
    TaperSpec taper_;
    std::vector<cplx> d_;
};

// Transform the leading power-of-two window of a trajectory (needs at least
// 8 states).
SpaceTimeSpectrum st_transform(const Trajectory& u, const TaperSpec& taper = {});

// Tapered signal recovered from the spectrum: spatial spectra at the n_tau
// padded time samples.  Slices n < n_t reproduce taper * state(n) and the
// trailing half reproduces the zero padding, both up to the dropped
// tau-Nyquist plane.
std::vector<SpectralField> time_slices(const SpaceTimeSpectrum& S);

// L^q of the tapered signal over the padded window, measure dt dx.  Spatial
// sections are rendered on a twice-oversampled grid, which integrates
// |u|^4 of a band-limited section exactly; q = inf gives the sample sup.
double st_lebesgue(const SpaceTimeSpectrum& S, double q);

enum class NormFamily { X, Xdot, Z, A, Y, L4tilde, N, Ms };

// Weighted coefficient norms.  With <x> = sqrt(1 + x^2), sigma as above,
// and all sums carrying the lattice measure weight:
//   X^{b,s}    = || <sigma>^b <xi>^s coeff ||_{L^2_{tau,xi}}
//   Xdot^{b,s} = the same with |sigma|^b, the sigma = 0 plane contributing 0
//   Z^{b,s}    = || <sigma>^b <xi>^s coeff ||_{L^2_xi L^1_tau}
//   A^b        = || <sigma>^b coeff ||_{L^1_{tau,xi}}               (no s)
//   Y^s        = X^{1/2,s} + Z^{0,s}                                (no b)
//   L4tilde    = (sum_j || block_j u ||_{L^4_{t,x}}^2)^{1/2}     (no b, s)
//   N          = Z^{0,0} + X^{7/8,-1} of the |xi| > 3 part + L4tilde
//                                                                (no b, s)
//   Ms         = Y^s + X^{1,-1} of the |xi| > 1 part                (no b)
// Passing a parameter a family ignores, or omitting one it needs, throws;
// b and s are restricted to [-2, 2].  The time restriction inside N is
// realized by the analysis window itself.
double bourgain_norm(const SpaceTimeSpectrum& S, NormFamily family,
                     std::optional<double> b = std::nullopt,
                     std::optional<double> s = std::nullopt);

// Sharp dyadic Littlewood-Paley projector: j = 0 keeps |xi| <= 2, j >= 1
// keeps 2^j < |xi| <= 2^{j+1}.  The bands tile the frequency lattice, so
// summing lp_block over j reproduces the input exactly and blocks with
// distinct j are L^2-orthogonal.
SpectralField lp_block(const SpectralField& g, int j);
SpaceTimeSpectrum lp_block(const SpaceTimeSpectrum& S, int j);

struct StrichartzReport {
    // Ratio || v ||_{L^4} / || v ||_{X^{3/8,0}} indexed by sample id.
    std::vector<double> ratio;

    double max_ratio() const;
    // Order statistic at level p in [0, 1], linear interpolation between
    // ranks.
    double quantile(double p) const;
};

// Empirical distribution of the fourth-power Strichartz ratio over random
// complex band-limited space-time fields: independent unit complex Gaussian
// coefficients on spatial harmonics |n| <= M/4 and window-periodic temporal
// harmonics |p| <= n_t/4, synthesized on n_t samples spanning t_window,
// then tapered and transformed.  Sample i is a pure function of
// (seed, stream = i), so the set is reproducible under any evaluation
// order.
StrichartzReport strichartz_ratio(int sample_count, std::uint64_t seed,
                                  const Grid& grid, int n_t,
                                  const TaperSpec& window = {},
                                  double t_window = 4.0);

// Every implemented family evaluated at one (b, s), in a fixed label order.
struct NormReport {
    double b = 0.0;
    double s = 0.0;
    std::vector<std::pair<std::string, double>> values;

    double at(const std::string& label) const;
};

NormReport norm_report(const SpaceTimeSpectrum& S, double b, double s);

}  // namespace bo
