#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "bo/rng.hpp"
#include "bo/spacetime.hpp"
#include "bo/spectral.hpp"
#include "doctest.h"

using namespace bo;

namespace {

Trajectory free_trajectory(const SpectralField& phi, double dt, int n_states) {
    Trajectory tr(phi.grid(), 0.0, dt, SolverConfig{});
    for (int n = 0; n < n_states; ++n)
        tr.states.push_back(free_evolve(phi, n * dt));
    return tr;
}

// Complex field, band-limited in space (|n| <= band_x) and periodic in time
// over t_window (|p| <= band_t), with unit complex Gaussian coefficients.
Trajectory synthetic_trajectory(const Grid& g, int n_t, double t_window,
                                int band_x, int band_t, std::uint64_t seed) {
    const CounterRng rng(seed, 0);
    const double dt = t_window / n_t;
    Trajectory v(g, 0.0, dt, SolverConfig{});
    v.states.assign(n_t, SpectralField(g, false));
    std::uint64_t c = 0;
    for (int p = -band_t; p <= band_t; ++p) {
        const double mu = 2.0 * kPi * p / t_window;
        for (int n = -band_x; n <= band_x; ++n) {
            const cplx a(rng.gaussian(2 * c), rng.gaussian(2 * c + 1));
            ++c;
            const int slot = n >= 0 ? n : n + g.size();
            for (int j = 0; j < n_t; ++j)
                v.states[j].coeffs()[slot] += a * std::polar(1.0, mu * (j * dt));
        }
    }
    return v;
}

double max_abs(const SpaceTimeSpectrum& S) {
    double m = 0.0;
    for (const cplx& c : S.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

TEST_CASE("taper samples") {
    const TaperSpec box{Window::boxcar};
    for (double p : box.samples(16)) CHECK(p == 1.0);
    CHECK(box.l2_norm(64, 0.25) == doctest::Approx(4.0).epsilon(1e-14));

    const TaperSpec smooth{};
    const int n = 64;
    const auto psi = smooth.samples(n);
    CHECK(psi[0] == 0.0);
    CHECK(psi[n - 1] == 0.0);
    for (int i = 0; i < n; ++i) {
        CHECK(psi[i] == doctest::Approx(psi[n - 1 - i]).epsilon(1e-14));
        CHECK(psi[i] >= 0.0);
        CHECK(psi[i] <= 1.0);
        // flat top on the middle half: theta = i/63 in [1/4, 3/4]
        if (4 * i >= n - 1 && 4 * i <= 3 * (n - 1)) CHECK(psi[i] == 1.0);
        if (i > 0 && 4 * i <= n - 1) CHECK(psi[i] > psi[i - 1]);
    }
    CHECK_THROWS_AS((void)smooth.samples(1), std::invalid_argument);
}

TEST_CASE("transform window and lattice geometry") {
    const Grid g(2.0, 16);
    const double dt = 0.125;
    SpectralField phi(g);
    phi.coeffs()[1] = cplx(1.0, 0.0);
    phi.coeffs()[15] = cplx(1.0, 0.0);

    // 70 states: the analysis window is the leading 64.
    const auto S = st_transform(free_trajectory(phi, dt, 70), TaperSpec{});
    CHECK(S.n_t() == 64);
    CHECK(S.n_tau() == 128);
    CHECK(S.dt() == dt);
    CHECK(S.t_padded() == 128 * dt);
    CHECK(S.tau(0) == 0.0);
    CHECK(S.tau(1) == doctest::Approx(2.0 * kPi / S.t_padded()).epsilon(1e-15));
    CHECK(S.tau_harmonic(127) == -1);
    CHECK(S.tau_harmonic(64) == 64);
    CHECK(S.weight() ==
          doctest::Approx(1.0 / (S.t_padded() * g.period())).epsilon(1e-15));

    // sigma carries the exact dispersion symbol at the lattice point.
    const double xi3 = g.frequency(3);
    CHECK(S.sigma(5, 3) ==
          doctest::Approx(S.tau(5) + xi3 * xi3).epsilon(1e-15));
    const double xim = g.frequency(13);
    CHECK(S.sigma(5, 13) ==
          doctest::Approx(S.tau(5) - xim * xim).epsilon(1e-15));

    // both Nyquist planes are identically zero
    for (int k = 0; k < 16; ++k) CHECK(std::abs(S.data(64, k)) == 0.0);
    for (int m = 0; m < 128; ++m) CHECK(std::abs(S.data(m, 8)) == 0.0);

    CHECK_THROWS_AS((void)st_transform(free_trajectory(phi, dt, 7)),
                    std::invalid_argument);
}

TEST_CASE("zero trajectory transforms to the zero spectrum") {
    const Grid g(1.0, 16);
    Trajectory tr(g, 0.0, 0.1, SolverConfig{});
    tr.states.assign(16, SpectralField(g));
    const auto S = st_transform(tr, TaperSpec{});
    CHECK(max_abs(S) == 0.0);
    // all norms of the zero spectrum vanish
    CHECK(bourgain_norm(S, NormFamily::X, 0.5, 1.0) == 0.0);
    CHECK(bourgain_norm(S, NormFamily::N) == 0.0);
    CHECK(st_lebesgue(S, 4.0) == 0.0);
}

TEST_CASE("real trajectories have Hermitian space-time spectra") {
    const Grid g(1.0, 32);
    Trajectory tr(g, 0.0, 0.05, SolverConfig{});
    for (int n = 0; n < 16; ++n)
        tr.states.push_back(to_spectral(random_band_limited(g, 10, 3, n)));
    for (auto win : {Window::boxcar, Window::smooth}) {
        const auto S = st_transform(tr, TaperSpec{win});
        const double scale = max_abs(S);
        double defect = 0.0;
        for (int m = 0; m < S.n_tau(); ++m)
            for (int k = 0; k < g.size(); ++k) {
                const int mm = (S.n_tau() - m) % S.n_tau();
                const int kk = (g.size() - k) % g.size();
                defect = std::max(
                    defect, std::abs(S.data(mm, kk) - std::conj(S.data(m, k))));
            }
        CHECK(defect <= 1e-13 * scale);
    }
}

TEST_CASE("free tone concentrates on its dispersion line") {
    // u = e^{i(Nx - N^2 t)}: the tau = -N^2 line falls between lattice
    // points, so the captured fraction probes the window's sidelobe decay.
    const Grid g(1.0, 64);
    const int N = 4, n_t = 64;
    const double dt = 1.0 / 16.0;
    SpectralField phi(g, false);
    phi.coeffs()[N] = g.period();

    const auto tr = free_trajectory(phi, dt, n_t);
    for (auto [win, dist, cap] : {std::tuple{Window::boxcar, 32, 1e-2},
                                  std::tuple{Window::smooth, 8, 1e-2}}) {
        const auto S = st_transform(tr, TaperSpec{win});
        const int n_tau = S.n_tau();
        double total = 0.0;
        std::vector<double> e(n_tau);
        for (int m = 0; m < n_tau; ++m) {
            e[m] = std::norm(S.data(m, N));
            total += e[m];
        }
        const double d_tau = 2.0 * kPi / S.t_padded();
        const int centre = (int)std::lround(-double(N * N) / d_tau);
        double captured = 0.0;
        for (int off = -dist; off <= dist; ++off)
            captured += e[((centre + off) % n_tau + n_tau) % n_tau];
        CHECK(1.0 - captured / total <= cap);

        // no spatial leakage at all: other columns stay exactly zero
        double other = 0.0;
        for (int k = 0; k < g.size(); ++k)
            if (k != N)
                for (int m = 0; m < n_tau; ++m)
                    other = std::max(other, std::abs(S.data(m, k)));
        CHECK(other == 0.0);
    }
}

TEST_CASE("single lattice mode reproduces the norm formulas") {
    const Grid g(1.0, 16);
    const int n_t = 16, m0 = 5, k0 = 3;
    const double dt = 0.25;
    const cplx a(0.7, -0.4);
    std::vector<cplx> data(std::size_t(2 * n_t) * g.size(), cplx(0.0));
    data[std::size_t(m0) * g.size() + k0] = a;
    const SpaceTimeSpectrum S(g, n_t, dt, TaperSpec{}, std::move(data));

    const double w = S.weight();
    const double sg = S.sigma(m0, k0);
    const double xi = g.frequency(k0);
    const double b = 0.375, s = 0.7;
    const double br_sg = std::pow(1.0 + sg * sg, 0.5 * b);
    const double br_xi = std::pow(1.0 + xi * xi, 0.5 * s);

    CHECK(bourgain_norm(S, NormFamily::X, b, s) ==
          doctest::Approx(std::abs(a) * br_sg * br_xi * std::sqrt(w))
              .epsilon(1e-13));
    CHECK(bourgain_norm(S, NormFamily::Xdot, b, s) ==
          doctest::Approx(std::abs(a) * std::pow(sg * sg, 0.5 * b) * br_xi *
                          std::sqrt(w))
              .epsilon(1e-13));
    CHECK(bourgain_norm(S, NormFamily::A, b) ==
          doctest::Approx(std::abs(a) * br_sg * w).epsilon(1e-13));
    // Z: L^1 in tau picks up the tau measure, L^2 in xi its own weight
    CHECK(bourgain_norm(S, NormFamily::Z, b, s) ==
          doctest::Approx(std::abs(a) * br_sg * br_xi *
                          std::sqrt(g.mode_weight()) / S.t_padded())
              .epsilon(1e-13));
    CHECK(bourgain_norm(S, NormFamily::Y, {}, s) ==
          doctest::Approx(bourgain_norm(S, NormFamily::X, 0.5, s) +
                          bourgain_norm(S, NormFamily::Z, 0.0, s))
              .epsilon(1e-13));

    // one mode has constant modulus |a| w, so every L^q is explicit and the
    // Besov sum collapses to the single block holding xi0
    const double mass = S.t_padded() * g.period();
    CHECK(st_lebesgue(S, 4.0) ==
          doctest::Approx(std::abs(a) * w * std::pow(mass, 0.25))
              .epsilon(1e-12));
    CHECK(st_lebesgue(S, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(std::abs(a) * w).epsilon(1e-12));
    CHECK(bourgain_norm(S, NormFamily::L4tilde) ==
          doctest::Approx(st_lebesgue(S, 4.0)).epsilon(1e-12));
}

TEST_CASE("families validate their parameters") {
    const Grid g(1.0, 16);
    Trajectory tr(g, 0.0, 0.1, SolverConfig{});
    tr.states.assign(8, SpectralField(g));
    const auto S = st_transform(tr, TaperSpec{});

    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::X, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::X, {}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::X, 2.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::X, 0.0, -2.5), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::Y, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::A, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::A), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::L4tilde, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::N, {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::Ms, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)bourgain_norm(S, NormFamily::Ms), std::invalid_argument);
    CHECK_THROWS_AS((void)st_lebesgue(S, 0.5), std::invalid_argument);
}

TEST_CASE("free solutions separate into data norm times window size") {
    // V(t) is unitary mode by mode, so X^{0,s} factorizes exactly up to the
    // dropped tau-Nyquist plane; dt keeps every dispersion line inside the
    // tau lattice (n_max^2 = 100 < pi/dt = 157).
    const Grid g(1.0, 64);
    const int n_t = 64;
    const double dt = 0.02;
    const SpectralField phi = to_spectral(random_band_limited(g, 10, 7, 0));
    const auto tr = free_trajectory(phi, dt, n_t);
    for (auto [win, tol] : {std::pair{Window::boxcar, 2e-2},
                            std::pair{Window::smooth, 1e-8}}) {
        const TaperSpec taper{win};
        const auto S = st_transform(tr, taper);
        for (double s : {0.0, 0.5, 1.0}) {
            const double ref = sobolev_norm(phi, s) * taper.l2_norm(n_t, dt);
            CHECK(bourgain_norm(S, NormFamily::X, 0.0, s) ==
                  doctest::Approx(ref).epsilon(tol));
        }
    }
}

TEST_CASE("tapered transform satisfies Parseval and inverts slice by slice") {
    const Grid g(1.0, 32);
    const int n_t = 32;
    const auto v = synthetic_trajectory(g, n_t, 4.0, 8, 8, 11);
    const TaperSpec taper{};
    const auto psi = taper.samples(n_t);
    const auto S = st_transform(v, taper);

    double time_side = 0.0, scale = 0.0;
    for (int n = 0; n < n_t; ++n) {
        const double q = sobolev_norm(v.states[n], 0.0);
        time_side += v.dt * psi[n] * psi[n] * q * q;
        scale = std::max(scale, q);
    }
    const double x00 = bourgain_norm(S, NormFamily::X, 0.0, 0.0);
    CHECK(x00 * x00 == doctest::Approx(time_side).epsilon(1e-5));

    // slices reproduce taper * state, and the padding slices stay near zero;
    // the 1e-3 allowance is the dropped tau-Nyquist plane
    const auto slices = time_slices(S);
    REQUIRE(int(slices.size()) == S.n_tau());
    for (int n = 0; n < S.n_tau(); ++n) {
        SpectralField d = slices[n];
        if (n < n_t) d -= cplx(psi[n]) * v.states[n];
        CHECK(sobolev_norm(d, 0.0) <= 1e-3 * scale);
    }
}

TEST_CASE("X norms are monotone in their exponents") {
    const Grid g(1.0, 32);
    const auto S =
        st_transform(synthetic_trajectory(g, 16, 4.0, 8, 4, 21), TaperSpec{});
    const std::vector<double> grid_b = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (std::size_t i = 1; i < grid_b.size(); ++i) {
        CHECK(bourgain_norm(S, NormFamily::X, grid_b[i - 1], 0.3) <=
              bourgain_norm(S, NormFamily::X, grid_b[i], 0.3));
        CHECK(bourgain_norm(S, NormFamily::X, 0.375, grid_b[i - 1]) <=
              bourgain_norm(S, NormFamily::X, 0.375, grid_b[i]));
    }
    for (double b : {0.0, 0.375, 1.0})
        CHECK(bourgain_norm(S, NormFamily::Xdot, b, 0.0) <=
              bourgain_norm(S, NormFamily::X, b, 0.0));
}

TEST_CASE("conjugating the signal preserves every norm") {
    const Grid g(1.0, 32);
    const auto u = synthetic_trajectory(g, 16, 4.0, 8, 4, 33);
    Trajectory ub(g, 0.0, u.dt, SolverConfig{});
    for (const auto& st : u.states) ub.states.push_back(conjugate(st));
    const auto S = st_transform(u, TaperSpec{});
    const auto Sb = st_transform(ub, TaperSpec{});

    const auto check = [&](double lhs, double rhs) {
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    };
    check(bourgain_norm(S, NormFamily::X, 0.375, 0.2),
          bourgain_norm(Sb, NormFamily::X, 0.375, 0.2));
    check(bourgain_norm(S, NormFamily::Xdot, 0.5, -0.3),
          bourgain_norm(Sb, NormFamily::Xdot, 0.5, -0.3));
    check(bourgain_norm(S, NormFamily::Z, 0.25, 0.4),
          bourgain_norm(Sb, NormFamily::Z, 0.25, 0.4));
    check(bourgain_norm(S, NormFamily::A, 0.5),
          bourgain_norm(Sb, NormFamily::A, 0.5));
    check(bourgain_norm(S, NormFamily::Y, {}, 0.4),
          bourgain_norm(Sb, NormFamily::Y, {}, 0.4));
    check(bourgain_norm(S, NormFamily::L4tilde),
          bourgain_norm(Sb, NormFamily::L4tilde));
    check(bourgain_norm(S, NormFamily::N), bourgain_norm(Sb, NormFamily::N));
    check(bourgain_norm(S, NormFamily::Ms, {}, 0.3),
          bourgain_norm(Sb, NormFamily::Ms, {}, 0.3));
    check(st_lebesgue(S, 4.0), st_lebesgue(Sb, 4.0));
}

TEST_CASE("littlewood-paley blocks tile the frequency lattice") {
    const Grid g(1.0, 64);
    SpectralField f(g);
    f.coeffs()[1] = cplx(1.0, 0.0);
    f.coeffs()[2] = cplx(2.0, 0.0);
    f.coeffs()[3] = cplx(3.0, 0.0);
    const auto d0 = lp_block(f, 0);
    CHECK(d0[1] == cplx(1.0, 0.0));
    CHECK(d0[2] == cplx(2.0, 0.0));
    CHECK(d0[3] == cplx(0.0, 0.0));

    // a single mode lands in exactly one block
    SpectralField mode(g, false);
    mode.coeffs()[8] = cplx(1.0, 0.0);
    for (int j = 0; j < 6; ++j) {
        const double want = (j == 2) ? 1.0 : 0.0;
        CHECK(std::abs(lp_block(mode, j)[8] - want) == 0.0);
    }

    // lambda = 2: the threshold compares xi = n/lambda, not the harmonic
    const Grid g2(2.0, 64);
    SpectralField h(g2);
    h.coeffs()[4] = cplx(1.0, 0.0);
    h.coeffs()[5] = cplx(1.0, 0.0);
    CHECK(lp_block(h, 0)[4] == cplx(1.0, 0.0));
    CHECK(lp_block(h, 0)[5] == cplx(0.0, 0.0));
    CHECK(lp_block(h, 1)[5] == cplx(1.0, 0.0));

    // exact partition, idempotence, orthogonality on a random field
    const SpectralField r = to_spectral(random_band_limited(g, 31, 5, 0));
    SpectralField sum(g);
    for (int j = 0; j <= 5; ++j) sum += lp_block(r, j);
    for (int k = 0; k < g.size(); ++k) CHECK(sum[k] == r[k]);
    for (int j = 0; j <= 5; ++j) {
        const auto once = lp_block(r, j);
        const auto twice = lp_block(once, j);
        for (int k = 0; k < g.size(); ++k) CHECK(twice[k] == once[k]);
    }
    for (int i = 0; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j) {
            cplx dot(0.0);
            const auto bi = lp_block(r, i), bj = lp_block(r, j);
            for (int k = 0; k < g.size(); ++k) dot += std::conj(bi[k]) * bj[k];
            CHECK(std::abs(dot) == 0.0);
        }
    CHECK_THROWS_AS((void)lp_block(r, -1), std::invalid_argument);

    // space-time variant: blocks of the spectrum also resum exactly
    const auto S =
        st_transform(synthetic_trajectory(g, 16, 4.0, 12, 4, 9), TaperSpec{});
    std::vector<cplx> acc(S.coeffs().size(), cplx(0.0));
    for (int j = 0; j <= 5; ++j) {
        const auto block = lp_block(S, j);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += block.coeffs()[i];
    }
    for (std::size_t i = 0; i < acc.size(); ++i) CHECK(acc[i] == S.coeffs()[i]);
}

TEST_CASE("plain L4 stays within a factor two of the block sum") {
    const Grid g(1.0, 32);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        const auto S = st_transform(
            synthetic_trajectory(g, 16, 4.0, 8, 4, 100 + i), TaperSpec{});
        const double ratio =
            st_lebesgue(S, 4.0) / bourgain_norm(S, NormFamily::L4tilde);
        worst = std::max(worst, ratio);
        CHECK(ratio > 0.2);
    }
    CHECK(worst <= 2.0);
}

TEST_CASE("sup-in-time Sobolev norm is dominated by the Z norm") {
    // u(t_n) = w_tau sum_m coeff e^{i tau_m t_n}, so the triangle plus
    // Minkowski inequalities give the embedding with constant exactly 1.
    const Grid g(1.0, 32);
    const auto S =
        st_transform(synthetic_trajectory(g, 16, 4.0, 8, 4, 55), TaperSpec{});
    const auto slices = time_slices(S);
    for (double s : {0.0, 0.5}) {
        double sup = 0.0;
        for (const auto& sl : slices) sup = std::max(sup, sobolev_norm(sl, s));
        CHECK(sup <= bourgain_norm(S, NormFamily::Z, 0.0, s) * (1.0 + 1e-12));
    }
}

TEST_CASE("strichartz sampling is deterministic and well formed") {
    const Grid g(1.0, 32);
    const auto r1 = strichartz_ratio(30, 7, g, 16);
    const auto r2 = strichartz_ratio(30, 7, g, 16);
    CHECK(r1.ratio == r2.ratio);
    CHECK(int(r1.ratio.size()) == 30);
    for (double v : r1.ratio) {
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
    CHECK(r1.quantile(1.0) == r1.max_ratio());
    CHECK(r1.quantile(0.0) == *std::min_element(r1.ratio.begin(), r1.ratio.end()));
    CHECK(r1.quantile(0.5) <= r1.quantile(0.9));

    const auto r3 = strichartz_ratio(30, 8, g, 16);
    CHECK(r1.ratio != r3.ratio);

    CHECK_THROWS_AS((void)strichartz_ratio(0, 7, g, 16), std::invalid_argument);
    CHECK_THROWS_AS((void)strichartz_ratio(1, 7, g, 12), std::invalid_argument);
    CHECK_THROWS_AS((void)strichartz_ratio(1, 7, g, 16, TaperSpec{}, -1.0),
                    std::invalid_argument);

    // a single free mode has a finite positive ratio too
    SpectralField phi(g, false);
    phi.coeffs()[3] = g.period();
    const auto S = st_transform(free_trajectory(phi, 0.05, 16), TaperSpec{});
    const double ratio =
        st_lebesgue(S, 4.0) / bourgain_norm(S, NormFamily::X, 0.375, 0.0);
    CHECK(std::isfinite(ratio));
    CHECK(ratio > 0.0);
}

TEST_CASE("norm report lists every family once") {
    const Grid g(1.0, 32);
    const auto S =
        st_transform(synthetic_trajectory(g, 16, 4.0, 8, 4, 77), TaperSpec{});
    const auto rep = norm_report(S, 0.375, 0.5);
    CHECK(rep.b == 0.375);
    CHECK(rep.s == 0.5);
    const std::vector<std::string> labels = {"X", "Xdot", "Z",  "A", "Y",
                                             "L4tilde", "L4", "N", "Ms"};
    REQUIRE(rep.values.size() == labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        CHECK(rep.values[i].first == labels[i]);
        CHECK(std::isfinite(rep.values[i].second));
        CHECK(rep.values[i].second >= 0.0);
    }
    CHECK(rep.at("X") == bourgain_norm(S, NormFamily::X, 0.375, 0.5));
    CHECK(rep.at("L4") == st_lebesgue(S, 4.0));
    CHECK_THROWS_AS((void)rep.at("nope"), std::out_of_range);
}
