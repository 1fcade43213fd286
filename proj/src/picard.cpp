#include "bo/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bo/quadrature.hpp"
#include "bo/spectral.hpp"

namespace bo {

namespace {

// Shared lattice machinery for the iterate recursion.  prefix_[k-2][j] is
// the twisted running integral int_0^{t_j} V(-t') G_k(t') dt', so
// A_k(t_j) = V(t_j) prefix_[k-2][j] exactly and values between lattice
// points need only one fresh partial panel on top of it.
class IterateRecursion {
  public:
    IterateRecursion(const SpectralField& phi, int k_max, double h, long n,
                     int order)
        : phi_(phi), k_max_(k_max), h_(h), n_(n), rule_(gauss_legendre(order)) {}

    void build() {
        for (int k = 2; k <= k_max_; ++k) {
            std::vector<SpectralField> prefix;
            prefix.reserve(n_ + 1);
            prefix.emplace_back(phi_.grid());
            for (long j = 0; j < n_; ++j)
                prefix.push_back(prefix.back() +
                                 panel(k, j * h_, (j + 1) * h_));
            prefix_.push_back(std::move(prefix));
        }
    }

    SpectralField lattice_state(int k, long j) const {
        if (k == 1) return free_evolve(phi_, j * h_);
        return free_evolve(prefix_[k - 2][j], j * h_);
    }

  private:
    // A_k at an off-lattice time (Gauss nodes are interior to their panel).
    SpectralField eval(int k, double t) const {
        if (k == 1) return free_evolve(phi_, t);
        const long p = std::min(n_ - 1, static_cast<long>(t / h_));
        return free_evolve(prefix_[k - 2][p] + panel(k, p * h_, t), t);
    }

    // V(-t') G_k(t') with G_k = 1/2 sum_{k1+k2=k} d_x(A_{k1} A_{k2}).
    SpectralField integrand(int k, double s) const {
        SpectralField sum(phi_.grid());
        for (int k1 = 1; 2 * k1 <= k; ++k1) {
            SpectralField prod = multiply(eval(k1, s), eval(k - k1, s));
            if (2 * k1 != k) prod *= 2.0;
            sum += prod;
        }
        sum = derivative(sum);
        sum *= 0.5;
        return free_evolve(sum, -s);
    }

    SpectralField panel(int k, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        SpectralField acc(phi_.grid());
        for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
            SpectralField g = integrand(k, mid + half * rule_.nodes[i]);
            g *= half * rule_.weights[i];
            acc += g;
        }
        return acc;
    }

    SpectralField phi_;
    int k_max_;
    double h_;
    long n_;
    const QuadratureRule& rule_;
    std::vector<std::vector<SpectralField>> prefix_;
};

}  // namespace

const Trajectory& IterateTable::order(int k) const {
    if (k < 1 || k > max_order)
        throw std::invalid_argument("iterate table: order out of range");
    return a[k - 1];
}

IterateTable picard_iterates(const RealField& phi, int K, double T,
                             const SolverConfig& cfg) {
    if (K < 1 || K > 12)
        throw std::invalid_argument("picard_iterates: K must be in [1, 12]");
    if (T < 0.0) throw std::invalid_argument("picard_iterates: T must be >= 0");
    if (cfg.quadrature_order < 2 || cfg.quadrature_order > 16)
        throw std::invalid_argument(
            "picard_iterates: quadrature order must be in [2, 16]");
    const SpectralField phi_hat = to_spectral(phi);
    phi_hat.require_mean_free();

    const long n_steps = T == 0.0 ? 0 : std::max(1l, std::lround(T / cfg.dt));
    const double dt = n_steps == 0 ? cfg.dt : T / static_cast<double>(n_steps);

    IterateRecursion rec(phi_hat, K, dt, std::max(1l, n_steps),
                         cfg.quadrature_order);
    rec.build();

    IterateTable table{phi, K, {}};
    table.a.reserve(K);
    for (int k = 1; k <= K; ++k) {
        Trajectory tr(phi.grid(), 0.0, dt, cfg);
        tr.states.reserve(n_steps + 1);
        for (long j = 0; j <= n_steps; ++j)
            tr.states.push_back(rec.lattice_state(k, j));
        table.a.push_back(std::move(tr));
    }
    return table;
}

namespace {

// amp * cos(n x + phase) added by exact coefficient placement.
void add_cos(SpectralField& f, int n, double phase, double amp) {
    const cplx c = amp * kPi * f.grid().lambda() * std::polar(1.0, phase);
    f.coeffs()[n] += c;
    f.coeffs()[f.grid().size() - n] += std::conj(c);
}

}  // namespace

RealField closed_form_a(int k, int N, double t, const Grid& grid) {
    if (k < 1 || k > 3)
        throw std::invalid_argument("closed_form_a: k must be 1, 2, or 3");
    if (N < 1) throw std::invalid_argument("closed_form_a: N must be >= 1");
    if (grid.lambda() != 1.0)
        throw std::invalid_argument(
            "closed_form_a: the closed forms live on the 2 pi circle");
    const int top = k == 1 ? N : (k == 2 ? 2 * N : 3 * N);
    if (top > grid.size() / 2 - 1)
        throw std::invalid_argument("closed_form_a: N too large for the grid");

    const double n2 = double(N) * N;
    SpectralField f(grid);
    switch (k) {
        case 1:
            add_cos(f, N, -n2 * t, 1.0);
            break;
        case 2:
            add_cos(f, 2 * N, -2.0 * n2 * t, 0.25 / N);
            add_cos(f, 2 * N, -4.0 * n2 * t, -0.25 / N);
            break;
        case 3:
            // -(t/8) sin = (t/8) cos shifted by +pi/2
            add_cos(f, N, -n2 * t + 0.5 * kPi, t / 8.0);
            add_cos(f, N, -3.0 * n2 * t, 1.0 / (16.0 * n2));
            add_cos(f, N, -n2 * t, -1.0 / (16.0 * n2));
            add_cos(f, 3 * N, -3.0 * n2 * t, 1.0 / (16.0 * n2));
            add_cos(f, 3 * N, -9.0 * n2 * t, -1.0 / (16.0 * n2));
            add_cos(f, 3 * N, -5.0 * n2 * t, -3.0 / (32.0 * n2));
            add_cos(f, 3 * N, -9.0 * n2 * t, 3.0 / (32.0 * n2));
            break;
    }
    return to_physical(f);
}

ResidualSeries series_vs_solver(const RealField& phi, double eps, int K,
                                double T, const SolverConfig& cfg, double s) {
    std::vector<double> scaled(phi.samples());
    for (double& v : scaled) v *= eps;
    const Trajectory u = evolve(RealField(phi.grid(), std::move(scaled)), T, cfg);
    const IterateTable table = picard_iterates(phi, K, T, cfg);

    ResidualSeries out;
    out.t.reserve(u.size());
    out.value.reserve(u.size());
    for (int n = 0; n < u.size(); ++n) {
        SpectralField diff = u.states[n];
        double ek = 1.0;
        for (int k = 1; k <= K; ++k) {
            ek *= eps;
            diff -= ek * table.a[k - 1].states[n];
        }
        out.t.push_back(u.time(n));
        out.value.push_back(sobolev_norm(diff, s));
    }
    return out;
}

std::vector<IllposedRow> illposed_sweep(double s, double t,
                                        const std::vector<int>& n_list) {
    if (s > 0.0)
        throw std::invalid_argument("illposed_sweep: s must be <= 0");
    if (!(t > 0.0)) throw std::invalid_argument("illposed_sweep: t must be > 0");
    if (n_list.empty())
        throw std::invalid_argument("illposed_sweep: empty N list");
    int n_max = 1;
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("illposed_sweep: N must be >= 1");
        n_max = std::max(n_max, n);
    }
    int m = 64;
    while (m < 8 * n_max) m *= 2;
    const Grid grid(1.0, m);

    std::vector<IllposedRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) {
        // psi_N = N^{-s} cos(Nx); A_3 is trilinear, so its norm scales by
        // the cube of the amplitude
        const double amp = std::pow(double(n), -s);
        const double norm_psi =
            amp * sobolev_norm(to_spectral(closed_form_a(1, n, 0.0, grid)), s);
        const double norm_a3 =
            amp * amp * amp *
            sobolev_norm(to_spectral(closed_form_a(3, n, t, grid)), s);
        const double ratio =
            norm_a3 /
            (t * std::pow(double(n), -2.0 * s) * std::pow(norm_psi, 3));
        const double eps_n = std::min(
            {0.5, 0.25 * t, std::pow(0.25 * t * std::pow(double(n), s), 0.25)});
        rows.push_back({n, eps_n, norm_psi, norm_a3, ratio});
    }
    return rows;
}

}  // namespace bo
