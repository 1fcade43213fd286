#include "bo/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace bo {

namespace {

template <typename Keep>
SpectralField select(const SpectralField& g, bool breaks_symmetry, Keep keep) {
    std::vector<cplx> out(g.grid().size(), cplx(0.0));
    for (int k = 0; k < g.grid().size(); ++k)
        if (!g.grid().is_nyquist(k) && keep(g.grid().frequency(k))) out[k] = g[k];
    return SpectralField(g.grid(), std::move(out),
                         g.real_signal() && !breaks_symmetry);
}

template <typename Mult>
SpectralField apply_multiplier(const SpectralField& g, bool keeps_symmetry, Mult m) {
    std::vector<cplx> out(g.grid().size());
    for (int k = 0; k < g.grid().size(); ++k)
        out[k] = g.grid().is_nyquist(k) ? cplx(0.0) : m(g.grid().frequency(k)) * g[k];
    return SpectralField(g.grid(), std::move(out), g.real_signal() && keeps_symmetry);
}

}  // namespace

SpectralField project(const SpectralField& g, Projection p, double a) {
    switch (p) {
        case Projection::plus:
            return select(g, true, [](double xi) { return xi > 0.0; });
        case Projection::minus:
            return select(g, true, [](double xi) { return xi < 0.0; });
        case Projection::zero:
            return select(g, false, [](double xi) { return xi == 0.0; });
        case Projection::le:
            return select(g, false, [a](double xi) { return std::abs(xi) <= a; });
        case Projection::gt:
            return select(g, false, [a](double xi) { return std::abs(xi) > a; });
        case Projection::strict_gt:
            return select(g, true, [a](double xi) { return xi > a; });
        case Projection::strict_lt:
            return select(g, true, [a](double xi) { return xi < a; });
    }
    throw std::invalid_argument("project: unknown projection");
}

SpectralField conjugate(const SpectralField& g) {
    const int m = g.grid().size();
    std::vector<cplx> c(m);
    for (int k = 0; k < m; ++k) c[k] = std::conj(g[(m - k) % m]);
    return SpectralField(g.grid(), std::move(c), g.real_signal());
}

SpectralField hilbert(const SpectralField& g) {
    return apply_multiplier(g, true, [](double xi) {
        return xi == 0.0 ? cplx(0.0) : cplx(0.0, xi > 0.0 ? -1.0 : 1.0);
    });
}

SpectralField derivative(const SpectralField& g) {
    return apply_multiplier(g, true, [](double xi) { return cplx(0.0, xi); });
}

SpectralField antiderivative(const SpectralField& g) {
    g.require_mean_free();
    return apply_multiplier(g, true, [](double xi) {
        return xi == 0.0 ? cplx(0.0) : cplx(0.0, -1.0 / xi);
    });
}

SpectralField fractional(const SpectralField& g, double alpha) {
    if (alpha < 0.0) g.require_mean_free();
    return apply_multiplier(g, true, [alpha](double xi) {
        if (xi == 0.0) return alpha == 0.0 ? cplx(1.0) : cplx(0.0);
        return cplx(std::pow(std::abs(xi), alpha));
    });
}

SpectralField bessel(const SpectralField& g, double alpha) {
    return apply_multiplier(g, true, [alpha](double xi) {
        return cplx(std::pow(1.0 + xi * xi, 0.5 * alpha));
    });
}

SpectralField free_evolve(const SpectralField& g, double t) {
    return apply_multiplier(g, true, [t](double xi) {
        const double phase = -xi * std::abs(xi) * t;
        return cplx(std::cos(phase), std::sin(phase));
    });
}

double sobolev_norm(const SpectralField& g, double s) {
    const double w = g.grid().mode_weight();
    double acc = 0.0;
    for (int k = 0; k < g.grid().size(); ++k) {
        const double xi = g.grid().frequency(k);
        acc += std::pow(1.0 + xi * xi, s) * std::norm(g[k]);
    }
    return std::sqrt(w * acc);
}

double lebesgue_norm(const RealField& u, double q) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : u.samples()) m = std::max(m, std::abs(v));
        return m;
    }
    if (q < 1.0) throw std::invalid_argument("lebesgue_norm: q must be >= 1");
    double acc = 0.0;
    for (double v : u.samples()) acc += std::pow(std::abs(v), q);
    return std::pow(acc * u.grid().dx(), 1.0 / q);
}

double lebesgue_norm(const std::vector<cplx>& samples, double dx, double q) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (const cplx& v : samples) m = std::max(m, std::abs(v));
        return m;
    }
    if (q < 1.0) throw std::invalid_argument("lebesgue_norm: q must be >= 1");
    double acc = 0.0;
    for (const cplx& v : samples) acc += std::pow(std::abs(v), q);
    return std::pow(acc * dx, 1.0 / q);
}

SpectralField pad_spectrum(const SpectralField& g, int fine_m) {
    const Grid fine(g.grid().lambda(), fine_m);
    if (fine_m < g.grid().size())
        throw std::invalid_argument("pad_spectrum: target grid is coarser");
    std::vector<cplx> out(fine_m, cplx(0.0));
    const int m = g.grid().size();
    for (int n = -m / 2 + 1; n < m / 2; ++n)
        out[n >= 0 ? n : n + fine_m] = g.harmonic(n);
    return SpectralField(fine, std::move(out), g.real_signal());
}

SpectralField truncate_spectrum(const SpectralField& g, const Grid& coarse) {
    if (coarse.lambda() != g.grid().lambda())
        throw GridMismatchError();
    if (coarse.size() > g.grid().size())
        throw std::invalid_argument("truncate_spectrum: target grid is finer");
    const int m = coarse.size();
    std::vector<cplx> out(m, cplx(0.0));
    for (int n = -m / 2 + 1; n < m / 2; ++n)
        out[n >= 0 ? n : n + m] = g.harmonic(n);
    return SpectralField(coarse, std::move(out), g.real_signal());
}

SpectralField multiply(const SpectralField& a, const SpectralField& b,
                       int oversample) {
    if (a.grid() != b.grid()) throw GridMismatchError();
    if (oversample < 2) throw std::invalid_argument("multiply: oversample must be >= 2");
    const int fine_m = oversample * a.grid().size();
    const auto sa = to_samples(pad_spectrum(a, fine_m));
    const auto sb = to_samples(pad_spectrum(b, fine_m));
    std::vector<cplx> prod(sa.size());
    for (std::size_t j = 0; j < sa.size(); ++j) prod[j] = sa[j] * sb[j];
    const Grid fine(a.grid().lambda(), fine_m);
    return truncate_spectrum(
        from_samples(fine, prod, a.real_signal() && b.real_signal()), a.grid());
}

std::vector<cplx> phase_samples(const SpectralField& f_hat, double scale,
                                int oversample) {
    const int fine_m = oversample * f_hat.grid().size();
    const RealField f = to_physical(pad_spectrum(f_hat, fine_m));
    std::vector<cplx> out(f.samples().size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double th = scale * f.samples()[j];
        out[j] = cplx(std::cos(th), std::sin(th));
    }
    return out;
}

}  // namespace bo
