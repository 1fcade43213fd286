#include "bo/field.hpp"

#include <algorithm>
#include <cmath>

#include "bo/fft.hpp"

namespace bo {

bool RealField::mean_free() const { return std::abs(integral()) <= kMeanTol; }

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (grid_ != o.grid_) throw GridMismatchError();
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    real_ = real_ && o.real_;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (grid_ != o.grid_) throw GridMismatchError();
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    real_ = real_ && o.real_;
    return *this;
}

SpectralField& SpectralField::operator*=(cplx a) {
    for (auto& c : c_) c *= a;
    real_ = real_ && a.imag() == 0.0;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx a, SpectralField g) { return g *= a; }

SpectralField to_spectral(const RealField& u) {
    std::vector<cplx> buf(u.samples().begin(), u.samples().end());
    fft::forward(buf);
    const double dx = u.grid().dx();
    for (auto& c : buf) c *= dx;
    return SpectralField(u.grid(), std::move(buf), true);
}

RealField to_physical(const SpectralField& g) {
    std::vector<cplx> buf = g.coeffs();
    fft::backward(buf);
    // backward is unnormalized; coefficients carry a dx factor from the
    // forward direction, so the physical scale is 1/(M*dx) = 1/period.
    const double scale = 1.0 / g.grid().period();
    std::vector<double> out(buf.size());
    for (std::size_t j = 0; j < buf.size(); ++j) out[j] = buf[j].real() * scale;
    return RealField(g.grid(), std::move(out));
}

std::vector<cplx> to_samples(const SpectralField& g) {
    std::vector<cplx> buf = g.coeffs();
    fft::backward(buf);
    const double scale = 1.0 / g.grid().period();
    for (auto& v : buf) v *= scale;
    return buf;
}

SpectralField from_samples(const Grid& grid, const std::vector<cplx>& samples,
                           bool real_signal) {
    if (static_cast<int>(samples.size()) != grid.size())
        throw std::invalid_argument("from_samples: sample count != M");
    std::vector<cplx> buf = samples;
    fft::forward(buf);
    const double dx = grid.dx();
    for (auto& c : buf) c *= dx;
    return SpectralField(grid, std::move(buf), real_signal);
}

double hermitian_defect(const SpectralField& g) {
    const int m = g.grid().size();
    double worst = 0.0, scale = 0.0;
    for (int k = 0; k < m; ++k) scale = std::max(scale, std::abs(g[k]));
    if (scale == 0.0) return 0.0;
    for (int n = 0; n < m / 2; ++n) {
        const cplx a = g.harmonic(n);
        const cplx b = g.harmonic(-n);
        worst = std::max(worst, std::abs(a - std::conj(b)));
    }
    return worst / scale;
}

}  // namespace bo
