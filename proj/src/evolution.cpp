#include "bo/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "bo/quadrature.hpp"

namespace bo {

namespace {

// H d^2/dx^2 has multiplier i xi |xi|.
SpectralField dispersion(const SpectralField& u) {
    return hilbert(derivative(derivative(u)));
}

std::vector<char> dealias_mask(const Grid& g, double fraction) {
    const int band = static_cast<int>(fraction * (g.size() / 2));
    std::vector<char> keep(g.size());
    for (int k = 0; k < g.size(); ++k)
        keep[k] = !g.is_nyquist(k) && std::abs(g.harmonic(k)) <= band;
    return keep;
}

void apply_mask(SpectralField& u, const std::vector<char>& keep) {
    for (int k = 0; k < u.grid().size(); ++k)
        if (!keep[k]) u.coeffs()[k] = 0.0;
}

// Dealiased 1/2 d/dx (u^2).  Masking both the factors and the product makes
// the kept band an exact Galerkin truncation (no aliased images land inside).
SpectralField nonlinear(const SpectralField& u, const std::vector<char>& keep) {
    SpectralField v = u;
    apply_mask(v, keep);
    auto s = to_samples(v);
    for (auto& val : s) val *= val;
    SpectralField p = from_samples(u.grid(), s, u.real_signal());
    p = derivative(p);
    p *= cplx(0.5);
    apply_mask(p, keep);
    return p;
}

double sup_norm(const SpectralField& u) {
    double m = 0.0;
    for (const cplx& v : to_samples(u)) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

std::pair<RealField, double> reduce_mean(const RealField& u0) {
    const double m = u0.mean();
    std::vector<double> s = u0.samples();
    for (double& v : s) v -= m;
    return {RealField(u0.grid(), std::move(s)), m};
}

Trajectory reconstruct(const Trajectory& v, double m) {
    Trajectory out(v.grid, v.t0, v.dt, v.cfg);
    out.states.reserve(v.states.size());
    for (int n = 0; n < v.size(); ++n) {
        const double t = v.time(n);
        std::vector<cplx> c = v.state(n).coeffs();
        for (int k = 0; k < v.grid.size(); ++k) {
            const double th = v.grid.frequency(k) * t * m;
            c[k] *= cplx(std::cos(th), std::sin(th));
        }
        c[0] += v.grid.period() * m;
        out.states.emplace_back(v.grid, std::move(c), v.state(n).real_signal());
    }
    return out;
}

Trajectory evolve(const RealField& u0, double T, const SolverConfig& cfg) {
    if (!(T >= 0.0)) throw std::invalid_argument("evolve: T must be >= 0");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve: dt must be > 0");
    SpectralField u = to_spectral(u0);
    u.require_mean_free();

    const long n_steps = T == 0.0 ? 0 : std::max(1l, std::lround(T / cfg.dt));
    const double dt = n_steps == 0 ? cfg.dt : T / static_cast<double>(n_steps);
    const double hdt = 0.5 * dt;
    const auto keep = dealias_mask(u0.grid(), cfg.dealias_fraction);

    SolverConfig used = cfg;
    used.dt = dt;
    Trajectory traj(u0.grid(), 0.0, dt, used);
    traj.states.reserve(n_steps + 1);
    traj.states.push_back(u);

    for (long step = 0; step < n_steps; ++step) {
        const SpectralField nu = nonlinear(u, keep);
        const SpectralField a = free_evolve(u + cplx(hdt) * nu, hdt);
        const SpectralField na = nonlinear(a, keep);
        const SpectralField e1u = free_evolve(u, hdt);
        const SpectralField b = e1u + cplx(hdt) * na;
        const SpectralField nb = nonlinear(b, keep);
        const SpectralField e2u = free_evolve(u, dt);
        const SpectralField c = e2u + cplx(dt) * free_evolve(nb, hdt);
        const SpectralField nc = nonlinear(c, keep);

        u = e2u + cplx(dt / 6.0) * (free_evolve(nu, dt) +
                                    cplx(2.0) * free_evolve(na + nb, hdt) + nc);

        const double sup = sup_norm(u);
        if (!std::isfinite(sup) || sup > cfg.blowup_threshold)
            throw BlowupError((step + 1) * dt, sup);
        traj.states.push_back(u);
    }
    return traj;
}

SpectralField duhamel(const Trajectory& g, double t) {
    const int n = g.size();
    const int order = g.cfg.quadrature_order;
    if (order < 2 || order > 16)
        throw std::invalid_argument("duhamel: quadrature order must be in [2, 16]");
    const double span = (n - 1) * g.dt;
    if (!(t >= 0.0) || t > span + 1e-9 * std::max(1.0, span))
        throw std::invalid_argument("duhamel: t outside the trajectory span");
    t = std::min(t, span);

    bool real = true;
    for (const auto& st : g.states) real = real && st.real_signal();
    if (t == 0.0 || n == 1) return SpectralField(g.grid, real);
    if (n < 4)
        throw std::invalid_argument("duhamel: need at least 4 samples");

    // Twisted samples h_n = V(-s_n) G(s_n); the kernel depends only on time
    // differences so trajectory times are taken relative to the start.
    std::vector<SpectralField> h;
    h.reserve(n);
    for (int i = 0; i < n; ++i) h.push_back(free_evolve(g.state(i), -(i * g.dt)));

    const QuadratureRule& rule = gauss_legendre(order);
    const int m = g.grid.size();
    std::vector<cplx> acc(m, cplx(0.0));

    const int full_cells = static_cast<int>(t / g.dt + 1e-12);
    for (int cell = 0; cell <= full_cells; ++cell) {
        const double a = cell * g.dt;
        const double b = cell < full_cells ? (cell + 1) * g.dt : t;
        if (b - a <= 1e-14 * g.dt) continue;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < order; ++q) {
            const double s = mid + half * rule.nodes[q];
            const double wq = half * rule.weights[q];
            // Cubic Lagrange through the four samples nearest s.
            int base = std::clamp(static_cast<int>(s / g.dt) - 1, 0, n - 4);
            double lw[4];
            for (int i = 0; i < 4; ++i) {
                double num = 1.0, den = 1.0;
                for (int j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    num *= s - (base + j) * g.dt;
                    den *= (i - j) * g.dt;
                }
                lw[i] = wq * num / den;
            }
            for (int i = 0; i < 4; ++i) {
                const auto& c = h[base + i].coeffs();
                for (int k = 0; k < m; ++k) acc[k] += lw[i] * c[k];
            }
        }
    }
    return free_evolve(SpectralField(g.grid, std::move(acc), real), t);
}

double momentum(const SpectralField& u) {
    const double norm = sobolev_norm(u, 0.0);
    return norm * norm;
}

double energy(const SpectralField& u, int cubic_sign) {
    if (cubic_sign != 1 && cubic_sign != -1)
        throw std::invalid_argument("energy: cubic_sign must be +1 or -1");
    const Grid& g = u.grid();
    double quad = 0.0;
    for (int k = 0; k < g.size(); ++k)
        quad += std::abs(g.frequency(k)) * std::norm(u[k]);
    quad *= 0.5 * g.mode_weight();

    // The cubic integral needs a doubled band to be quadrature exact.
    const auto s = to_samples(pad_spectrum(u, 2 * g.size()));
    double cubic = 0.0;
    for (const cplx& v : s) cubic += v.real() * v.real() * v.real();
    cubic *= g.period() / static_cast<double>(s.size());

    return quad + cubic_sign * cubic / 6.0;
}

std::vector<MonitorRow> monitor_series(const Trajectory& u) {
    std::vector<MonitorRow> rows;
    rows.reserve(u.size());
    for (int n = 0; n < u.size(); ++n) {
        const SpectralField& st = u.state(n);
        MonitorRow r;
        r.t = u.time(n);
        r.mean = st[0].real() / u.grid.period();
        r.momentum = momentum(st);
        r.energy_plus = energy(st, +1);
        r.energy_minus = energy(st, -1);
        rows.push_back(r);
    }
    return rows;
}

Trajectory dilate(const Trajectory& u, double beta) {
    if (!(beta > 0.0) || u.grid.lambda() * beta < 1.0)
        throw std::invalid_argument(
            "dilate: need beta > 0 with lambda * beta >= 1");
    const Grid fine(u.grid.lambda() * beta, u.grid.size());
    SolverConfig cfg = u.cfg;
    cfg.dt = u.cfg.dt * beta * beta;
    Trajectory out(fine, u.t0 * beta * beta, u.dt * beta * beta, cfg);
    out.states.reserve(u.states.size());
    for (const auto& st : u.states)
        out.states.emplace_back(fine, st.coeffs(), st.real_signal());
    return out;
}

std::vector<SpectralField> time_derivative(const std::vector<SpectralField>& f,
                                           double dt) {
    const int n = static_cast<int>(f.size());
    if (n < 5)
        throw std::invalid_argument("time_derivative: need at least 5 samples");
    const double inv = 1.0 / (12.0 * dt);
    auto combine = [&](std::initializer_list<std::pair<double, int>> terms) {
        std::vector<cplx> acc(f[0].grid().size(), cplx(0.0));
        bool real = true;
        for (const auto& [w, idx] : terms) {
            const auto& c = f[idx].coeffs();
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * inv * c[k];
            real = real && f[idx].real_signal();
        }
        return SpectralField(f[0].grid(), std::move(acc), real);
    };

    std::vector<SpectralField> out;
    out.reserve(n);
    out.push_back(combine({{-25, 0}, {48, 1}, {-36, 2}, {16, 3}, {-3, 4}}));
    out.push_back(combine({{-3, 0}, {-10, 1}, {18, 2}, {-6, 3}, {1, 4}}));
    for (int i = 2; i < n - 2; ++i)
        out.push_back(combine({{1, i - 2}, {-8, i - 1}, {8, i + 1}, {-1, i + 2}}));
    out.push_back(
        combine({{3, n - 1}, {10, n - 2}, {-18, n - 3}, {6, n - 4}, {-1, n - 5}}));
    out.push_back(combine(
        {{25, n - 1}, {-48, n - 2}, {36, n - 3}, {-16, n - 4}, {3, n - 5}}));
    return out;
}

double ResidualSeries::max_value() const {
    double m = 0.0;
    for (double v : value) m = std::max(m, v);
    return m;
}

namespace {

int clamp_stride(int stride, int n_states) {
    if (stride < 1) throw std::invalid_argument("residual: stride must be >= 1");
    return std::max(1, std::min(stride, (n_states - 1) / 4));
}

std::vector<SpectralField> pick_strided(const std::vector<SpectralField>& f,
                                        int stride) {
    std::vector<SpectralField> out;
    out.reserve(f.size() / stride + 1);
    for (std::size_t i = 0; i < f.size(); i += stride) out.push_back(f[i]);
    return out;
}

}  // namespace

ResidualSeries residual_bo(const Trajectory& u, int stride) {
    const int s = clamp_stride(stride, u.size());
    const auto picked = pick_strided(u.states, s);
    const auto ut = time_derivative(picked, s * u.dt);
    ResidualSeries out;
    out.t.reserve(picked.size());
    out.value.reserve(picked.size());
    for (std::size_t n = 0; n < picked.size(); ++n) {
        const SpectralField& f = picked[n];
        const SpectralField r =
            ut[n] + dispersion(f) - multiply(f, derivative(f));
        out.t.push_back(u.time(static_cast<int>(n) * s));
        out.value.push_back(sobolev_norm(r, 0.0));
    }
    return out;
}

}  // namespace bo
