#include "bo/gauge.hpp"

#include <algorithm>
#include <stdexcept>

#include "bo/spectral.hpp"

namespace bo {

namespace {

// e^{i scale F} as a spectral field on the grid of F.  The signal has unit
// modulus, so its coefficient scale is the period; entries below 1e-14 of
// that scale are transform roundoff, not spectrum, and are squelched so the
// derivative stacks in the w residuals cannot amplify them past the dt^4
// signal they measure.
SpectralField exp_phase(const SpectralField& f_hat, double scale) {
    const Grid fine(f_hat.grid().lambda(), 2 * f_hat.grid().size());
    SpectralField e = truncate_spectrum(
        from_samples(fine, phase_samples(f_hat, scale, 2), false),
        f_hat.grid());
    const double noise = 1e-14 * f_hat.grid().period();
    for (int k = 0; k < e.grid().size(); ++k)
        if (std::abs(e[k]) < noise) e.coeffs()[k] = 0.0;
    return e;
}

// e^{i scale F} * g, the product formed pointwise on the oversampled grid.
SpectralField exp_times(const SpectralField& f_hat, double scale,
                        const SpectralField& g) {
    const Grid fine(f_hat.grid().lambda(), 2 * f_hat.grid().size());
    auto s = phase_samples(f_hat, scale, 2);
    const auto gs = to_samples(pad_spectrum(g, fine.size()));
    for (int j = 0; j < fine.size(); ++j) s[j] *= gs[j];
    return truncate_spectrum(from_samples(fine, s, false), f_hat.grid());
}

SpectralField dispersion(const SpectralField& g) {
    return hilbert(derivative(derivative(g)));
}

// i g_xx, the dispersive side of the w equations.
SpectralField schroedinger(const SpectralField& g) {
    SpectralField out = derivative(derivative(g));
    out *= cplx(0.0, 1.0);
    return out;
}

int clamp_stride(int stride, int n_states) {
    if (stride < 1) throw std::invalid_argument("residual: stride must be >= 1");
    return std::max(1, std::min(stride, (n_states - 1) / 4));
}

// Constant value of P_0(F_x^2), the mean of u^2.
double fx2_mean(const SpectralField& u) {
    return momentum(u) / u.grid().period();
}

}  // namespace

GaugeBundle make_gauge(const RealField& u) {
    SpectralField su = to_spectral(u);
    su.require_mean_free();
    const SpectralField f_hat = antiderivative(su);
    SpectralField W = project(exp_phase(f_hat, -0.5), Projection::plus);
    SpectralField w = derivative(W);
    return {u, to_physical(f_hat), std::move(W), std::move(w)};
}

RealField invert_gauge(const GaugeBundle& b) {
    const SpectralField f_hat = to_spectral(b.F);
    const SpectralField inner =
        derivative(project(exp_phase(f_hat, -0.5), Projection::minus));
    SpectralField sum =
        exp_times(f_hat, 0.5, b.w) + exp_times(f_hat, 0.5, inner);
    sum *= cplx(0.0, 2.0);
    return to_physical(sum);
}

double check_negative_mode_identity(const RealField& u) {
    const GaugeBundle b = make_gauge(u);
    const SpectralField f_hat = to_spectral(b.F);
    const SpectralField inner =
        derivative(project(exp_phase(f_hat, 0.5), Projection::plus));
    SpectralField rhs =
        project(exp_times(f_hat, -0.5, conjugate(b.w)), Projection::minus) +
        project(exp_times(f_hat, -0.5, inner), Projection::minus);
    rhs *= cplx(0.0, -2.0);
    return sobolev_norm(project(to_spectral(u), Projection::minus) - rhs, 0.0);
}

double check_highmode_inversion(const RealField& u) {
    const GaugeBundle b = make_gauge(u);
    const SpectralField f_hat = to_spectral(b.F);
    const SpectralField high =
        project(exp_phase(f_hat, 0.5), Projection::strict_gt, 1.0);
    const SpectralField low =
        derivative(project(exp_phase(f_hat, -0.5), Projection::minus));
    SpectralField rhs = project(exp_times(f_hat, 0.5, b.w) + multiply(high, low),
                                Projection::strict_gt, 1.0);
    rhs *= cplx(0.0, 2.0);
    return sobolev_norm(
        project(to_spectral(u), Projection::strict_gt, 1.0) - rhs, 0.0);
}

ResidualSeries residual_F_eq(const Trajectory& u, int stride) {
    const int s = clamp_stride(stride, u.size());
    std::vector<SpectralField> f;
    for (int n = 0; n < u.size(); n += s)
        f.push_back(antiderivative(u.state(n)));
    const auto ft = time_derivative(f, s * u.dt);

    ResidualSeries out;
    for (std::size_t n = 0; n < f.size(); ++n) {
        const SpectralField& su = u.state(static_cast<int>(n) * s);
        const SpectralField sq = multiply(su, su);
        SpectralField rhs = sq - project(sq, Projection::zero);
        rhs *= cplx(0.5);
        out.t.push_back(u.time(static_cast<int>(n) * s));
        out.value.push_back(sobolev_norm(ft[n] + dispersion(f[n]) - rhs, 0.0));
    }
    return out;
}

ResidualSeries residual_w_eq(const Trajectory& u, int stride) {
    const int s = clamp_stride(stride, u.size());
    std::vector<GaugeBundle> b;
    std::vector<SpectralField> w;
    for (int n = 0; n < u.size(); n += s) {
        b.push_back(make_gauge(to_physical(u.state(n))));
        w.push_back(b.back().w);
    }
    const auto wt = time_derivative(w, s * u.dt);

    ResidualSeries out;
    for (std::size_t n = 0; n < w.size(); ++n) {
        const SpectralField& su = u.state(static_cast<int>(n) * s);
        const SpectralField transport = derivative(project(
            multiply(b[n].W, project(derivative(su), Projection::minus)),
            Projection::plus));
        SpectralField damp = w[n];
        damp *= cplx(0.0, 0.25 * fx2_mean(su));
        out.t.push_back(u.time(static_cast<int>(n) * s));
        out.value.push_back(
            sobolev_norm(wt[n] - schroedinger(w[n]) + transport - damp, 0.0));
    }
    return out;
}

ResidualSeries residual_w_eq2(const Trajectory& u, int stride) {
    const int s = clamp_stride(stride, u.size());
    std::vector<GaugeBundle> b;
    std::vector<SpectralField> w;
    for (int n = 0; n < u.size(); n += s) {
        b.push_back(make_gauge(to_physical(u.state(n))));
        w.push_back(b.back().w);
    }
    const auto wt = time_derivative(w, s * u.dt);

    ResidualSeries out;
    for (std::size_t n = 0; n < w.size(); ++n) {
        const SpectralField f_hat = to_spectral(b[n].F);
        const SpectralField inner1 = derivative(project(
            exp_times(f_hat, -0.5, conjugate(w[n])), Projection::minus));
        const SpectralField lifted =
            derivative(project(exp_phase(f_hat, 0.5), Projection::plus));
        const SpectralField inner2 = derivative(
            project(exp_times(f_hat, -0.5, lifted), Projection::minus));
        SpectralField pump = derivative(
            project(multiply(b[n].W, inner1 + inner2), Projection::plus));
        pump *= cplx(0.0, 2.0);
        SpectralField damp = w[n];
        damp *= cplx(0.0, 0.25 * fx2_mean(u.state(static_cast<int>(n) * s)));
        out.t.push_back(u.time(static_cast<int>(n) * s));
        out.value.push_back(
            sobolev_norm(wt[n] - schroedinger(w[n]) - pump - damp, 0.0));
    }
    return out;
}

}  // namespace bo
