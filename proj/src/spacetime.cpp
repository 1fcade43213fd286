#include "bo/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bo/fft.hpp"
#include "bo/rng.hpp"
#include "bo/spectral.hpp"

namespace bo {

namespace {

// 6r^5 - 15r^4 + 10r^3: rises 0 -> 1 with vanishing first and second
// derivatives at both ends, so the glued window is C^2.
double smootherstep(double r) {
    r = std::clamp(r, 0.0, 1.0);
    return r * r * r * (r * (6.0 * r - 15.0) + 10.0);
}

}  // namespace

std::vector<double> TaperSpec::samples(int n_t) const {
    if (n_t < 2) throw std::invalid_argument("taper: need at least 2 samples");
    std::vector<double> psi(n_t, 1.0);
    if (window == Window::boxcar) return psi;
    for (int n = 0; n < n_t; ++n) {
        const double theta = double(n) / (n_t - 1);
        if (theta < 0.25)
            psi[n] = smootherstep(4.0 * theta);
        else if (theta > 0.75)
            psi[n] = smootherstep(4.0 * (1.0 - theta));
    }
    return psi;
}

double TaperSpec::l2_norm(int n_t, double dt) const {
    double acc = 0.0;
    for (double p : samples(n_t)) acc += p * p;
    return std::sqrt(dt * acc);
}

SpaceTimeSpectrum::SpaceTimeSpectrum(Grid grid, int n_t, double dt,
                                     TaperSpec taper, std::vector<cplx> data)
    : grid_(grid), n_t_(n_t), dt_(dt), taper_(taper), d_(std::move(data)) {
    if (n_t_ < 8 || (n_t_ & (n_t_ - 1)) != 0)
        throw std::invalid_argument(
            "space-time spectrum: n_t must be a power of two, n_t >= 8");
    if (!(dt_ > 0.0))
        throw std::invalid_argument("space-time spectrum: dt must be positive");
    const int m = grid_.size();
    if (d_.size() != std::size_t(n_tau()) * m)
        throw std::invalid_argument(
            "space-time spectrum: data size != n_tau * M");
    for (int k = 0; k < m; ++k) d_[std::size_t(n_t_) * m + k] = 0.0;
    for (int j = 0; j < n_tau(); ++j) d_[std::size_t(j) * m + m / 2] = 0.0;
}

SpaceTimeSpectrum st_transform(const Trajectory& u, const TaperSpec& taper) {
    if (u.size() < 8)
        throw std::invalid_argument("st_transform: need at least 8 states");
    int n_t = 8;
    while (2 * n_t <= u.size()) n_t *= 2;
    const int n_tau = 2 * n_t;
    const int m = u.grid.size();
    const auto psi = taper.samples(n_t);

    std::vector<cplx> data(std::size_t(n_tau) * m, cplx(0.0));
    std::vector<cplx> col(n_tau);
    for (int k = 0; k < m; ++k) {
        std::fill(col.begin(), col.end(), cplx(0.0));
        for (int n = 0; n < n_t; ++n) col[n] = u.dt * psi[n] * u.states[n][k];
        fft::forward(col);
        for (int j = 0; j < n_tau; ++j) data[std::size_t(j) * m + k] = col[j];
    }
    return SpaceTimeSpectrum(u.grid, n_t, u.dt, taper, std::move(data));
}

std::vector<SpectralField> time_slices(const SpaceTimeSpectrum& S) {
    const int m = S.grid().size();
    const int n_tau = S.n_tau();
    const double scale = 1.0 / (n_tau * S.dt());
    std::vector<std::vector<cplx>> rows(n_tau, std::vector<cplx>(m));
    std::vector<cplx> col(n_tau);
    for (int k = 0; k < m; ++k) {
        for (int j = 0; j < n_tau; ++j) col[j] = S.data(j, k);
        fft::backward(col);
        for (int j = 0; j < n_tau; ++j) rows[j][k] = scale * col[j];
    }
    std::vector<SpectralField> out;
    out.reserve(n_tau);
    for (auto& r : rows) out.emplace_back(S.grid(), std::move(r), false);
    return out;
}

double st_lebesgue(const SpaceTimeSpectrum& S, double q) {
    if (!(q >= 1.0))
        throw std::invalid_argument("st_lebesgue: q must be >= 1 or inf");
    const int fine_m = 2 * S.grid().size();
    const double dx = S.grid().period() / fine_m;
    const bool sup = std::isinf(q);
    double acc = 0.0;
    for (const auto& slice : time_slices(S)) {
        const double v =
            lebesgue_norm(to_samples(pad_spectrum(slice, fine_m)), dx, q);
        if (sup)
            acc = std::max(acc, v);
        else
            acc += std::pow(v, q) * S.dt();
    }
    return sup ? acc : std::pow(acc, 1.0 / q);
}

namespace {

double require_param(const std::optional<double>& v, const char* family,
                     const char* name) {
    if (!v)
        throw std::invalid_argument(std::string("bourgain_norm: family ") +
                                    family + " needs parameter " + name);
    if (!(std::abs(*v) <= 2.0))
        throw std::invalid_argument(std::string("bourgain_norm: ") + name +
                                    " outside [-2, 2]");
    return *v;
}

void reject_param(const std::optional<double>& v, const char* family,
                  const char* name) {
    if (v)
        throw std::invalid_argument(std::string("bourgain_norm: family ") +
                                    family + " ignores parameter " + name);
}

// sqrt of the weighted L^2 sum with multiplier fn(sigma)^2 <xi>^{2s}.
template <class SigmaWeight>
double l2_norm_with(const SpaceTimeSpectrum& S, double s, SigmaWeight&& wgt) {
    const int m = S.grid().size();
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        const double xi = S.grid().frequency(k);
        const double xs = std::pow(1.0 + xi * xi, s);
        for (int j = 0; j < S.n_tau(); ++j) {
            const double a2 = std::norm(S.data(j, k));
            if (a2 == 0.0) continue;
            acc += wgt(S.sigma(j, k)) * xs * a2;
        }
    }
    return std::sqrt(acc * S.weight());
}

// Zero every spatial mode with |xi| <= a (sharp spatial high-pass).
SpaceTimeSpectrum st_highpass(const SpaceTimeSpectrum& S, double a) {
    SpaceTimeSpectrum out = S;
    const int m = S.grid().size();
    for (int k = 0; k < m; ++k)
        if (std::abs(S.grid().frequency(k)) <= a)
            for (int j = 0; j < S.n_tau(); ++j)
                out.coeffs()[std::size_t(j) * m + k] = 0.0;
    return out;
}

double norm_x(const SpaceTimeSpectrum& S, double b, double s) {
    return l2_norm_with(
        S, s, [b](double sg) { return std::pow(1.0 + sg * sg, b); });
}

double norm_xdot(const SpaceTimeSpectrum& S, double b, double s) {
    return l2_norm_with(S, s, [b](double sg) {
        return sg == 0.0 ? 0.0 : std::pow(sg * sg, b);
    });
}

double norm_z(const SpaceTimeSpectrum& S, double b, double s) {
    const int m = S.grid().size();
    const double w_tau = 1.0 / S.t_padded();
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        double l1 = 0.0;
        for (int j = 0; j < S.n_tau(); ++j) {
            const double a = std::abs(S.data(j, k));
            if (a == 0.0) continue;
            const double sg = S.sigma(j, k);
            l1 += std::pow(1.0 + sg * sg, 0.5 * b) * a;
        }
        const double xi = S.grid().frequency(k);
        const double xs = std::pow(1.0 + xi * xi, 0.5 * s);
        acc += xs * xs * (w_tau * l1) * (w_tau * l1);
    }
    return std::sqrt(acc * S.grid().mode_weight());
}

double norm_a(const SpaceTimeSpectrum& S, double b) {
    double acc = 0.0;
    for (int k = 0; k < S.grid().size(); ++k)
        for (int j = 0; j < S.n_tau(); ++j) {
            const double a = std::abs(S.data(j, k));
            if (a == 0.0) continue;
            const double sg = S.sigma(j, k);
            acc += std::pow(1.0 + sg * sg, 0.5 * b) * a;
        }
    return acc * S.weight();
}

double norm_l4tilde(const SpaceTimeSpectrum& S) {
    const double max_xi = S.grid().frequency(S.grid().size() / 2 - 1);
    double acc = 0.0;
    for (int j = 0;; ++j) {
        if (j >= 1 && std::exp2(j) > max_xi) break;
        const double v = st_lebesgue(lp_block(S, j), 4.0);
        acc += v * v;
    }
    return std::sqrt(acc);
}

}  // namespace

double bourgain_norm(const SpaceTimeSpectrum& S, NormFamily family,
                     std::optional<double> b, std::optional<double> s) {
    switch (family) {
        case NormFamily::X:
            return norm_x(S, require_param(b, "X", "b"),
                          require_param(s, "X", "s"));
        case NormFamily::Xdot:
            return norm_xdot(S, require_param(b, "Xdot", "b"),
                             require_param(s, "Xdot", "s"));
        case NormFamily::Z:
            return norm_z(S, require_param(b, "Z", "b"),
                          require_param(s, "Z", "s"));
        case NormFamily::A:
            reject_param(s, "A", "s");
            return norm_a(S, require_param(b, "A", "b"));
        case NormFamily::Y:
            reject_param(b, "Y", "b");
            return norm_x(S, 0.5, require_param(s, "Y", "s")) +
                   norm_z(S, 0.0, *s);
        case NormFamily::L4tilde:
            reject_param(b, "L4tilde", "b");
            reject_param(s, "L4tilde", "s");
            return norm_l4tilde(S);
        case NormFamily::N:
            reject_param(b, "N", "b");
            reject_param(s, "N", "s");
            return norm_z(S, 0.0, 0.0) +
                   norm_x(st_highpass(S, 3.0), 7.0 / 8.0, -1.0) +
                   norm_l4tilde(S);
        case NormFamily::Ms:
            reject_param(b, "Ms", "b");
            return bourgain_norm(S, NormFamily::Y, std::nullopt,
                                 require_param(s, "Ms", "s")) +
                   norm_x(st_highpass(S, 1.0), 1.0, -1.0);
    }
    throw std::invalid_argument("bourgain_norm: unknown family");
}

namespace {

// j = 0 keeps |xi| <= 2, j >= 1 keeps 2^j < |xi| <= 2^{j+1}.
bool in_band(double xi, int j) {
    const double a = std::abs(xi);
    if (j == 0) return a <= 2.0;
    return std::exp2(j) < a && a <= std::exp2(j + 1);
}

}  // namespace

SpectralField lp_block(const SpectralField& g, int j) {
    if (j < 0) throw std::invalid_argument("lp_block: j must be >= 0");
    SpectralField out = g;
    for (int k = 0; k < g.grid().size(); ++k)
        if (!in_band(g.grid().frequency(k), j)) out.coeffs()[k] = 0.0;
    return out;
}

SpaceTimeSpectrum lp_block(const SpaceTimeSpectrum& S, int j) {
    if (j < 0) throw std::invalid_argument("lp_block: j must be >= 0");
    SpaceTimeSpectrum out = S;
    const int m = S.grid().size();
    for (int k = 0; k < m; ++k)
        if (!in_band(S.grid().frequency(k), j))
            for (int n = 0; n < S.n_tau(); ++n)
                out.coeffs()[std::size_t(n) * m + k] = 0.0;
    return out;
}

double StrichartzReport::max_ratio() const {
    if (ratio.empty()) throw std::logic_error("strichartz report: no samples");
    return *std::max_element(ratio.begin(), ratio.end());
}

double StrichartzReport::quantile(double p) const {
    if (ratio.empty()) throw std::logic_error("strichartz report: no samples");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("quantile: p outside [0, 1]");
    std::vector<double> sorted = ratio;
    std::sort(sorted.begin(), sorted.end());
    const double pos = p * (sorted.size() - 1);
    const int lo = int(pos);
    const int hi = std::min<int>(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

StrichartzReport strichartz_ratio(int sample_count, std::uint64_t seed,
                                  const Grid& grid, int n_t,
                                  const TaperSpec& window, double t_window) {
    if (sample_count < 1)
        throw std::invalid_argument("strichartz_ratio: sample_count must be >= 1");
    if (n_t < 8 || (n_t & (n_t - 1)) != 0)
        throw std::invalid_argument(
            "strichartz_ratio: n_t must be a power of two, n_t >= 8");
    if (!(t_window > 0.0))
        throw std::invalid_argument("strichartz_ratio: t_window must be positive");

    const int m = grid.size();
    const int band_x = m / 4;
    const int band_t = n_t / 4;
    const double dt = t_window / n_t;

    StrichartzReport rep;
    rep.ratio.resize(sample_count);
    for (int i = 0; i < sample_count; ++i) {
        const CounterRng rng(seed, std::uint64_t(i));
        Trajectory v(grid, 0.0, dt, SolverConfig{});
        v.states.assign(n_t, SpectralField(grid, false));
        std::uint64_t c = 0;
        for (int p = -band_t; p <= band_t; ++p) {
            const double mu = 2.0 * kPi * p / t_window;
            for (int n = -band_x; n <= band_x; ++n) {
                const cplx a(rng.gaussian(2 * c), rng.gaussian(2 * c + 1));
                ++c;
                const int slot = n >= 0 ? n : n + m;
                for (int j = 0; j < n_t; ++j)
                    v.states[j].coeffs()[slot] +=
                        a * std::polar(1.0, mu * (j * dt));
            }
        }
        const SpaceTimeSpectrum S = st_transform(v, window);
        rep.ratio[i] = st_lebesgue(S, 4.0) /
                       bourgain_norm(S, NormFamily::X, 3.0 / 8.0, 0.0);
    }
    return rep;
}

double NormReport::at(const std::string& label) const {
    for (const auto& [name, value] : values)
        if (name == label) return value;
    throw std::out_of_range("norm report: no label " + label);
}

NormReport norm_report(const SpaceTimeSpectrum& S, double b, double s) {
    NormReport rep;
    rep.b = b;
    rep.s = s;
    rep.values = {
        {"X", bourgain_norm(S, NormFamily::X, b, s)},
        {"Xdot", bourgain_norm(S, NormFamily::Xdot, b, s)},
        {"Z", bourgain_norm(S, NormFamily::Z, b, s)},
        {"A", bourgain_norm(S, NormFamily::A, b)},
        {"Y", bourgain_norm(S, NormFamily::Y, {}, s)},
        {"L4tilde", bourgain_norm(S, NormFamily::L4tilde)},
        {"L4", st_lebesgue(S, 4.0)},
        {"N", bourgain_norm(S, NormFamily::N)},
        {"Ms", bourgain_norm(S, NormFamily::Ms, {}, s)},
    };
    for (const auto& [name, value] : rep.values)
        if (!(std::isfinite(value) && value >= 0.0))
            throw std::runtime_error("norm report: non-finite value for " + name);
    return rep;
}

}  // namespace bo
