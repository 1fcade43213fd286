#pragma once

#include <vector>

#include "bo/evolution.hpp"
#include "bo/field.hpp"

namespace bo {

// Iterates of the quadratic Duhamel recursion on one shared time lattice:
// A_1(t) = V(t) phi and
//   A_k(t) = 1/2 sum_{k1+k2=k} int_0^t V(t-t') d_x(A_{k1} A_{k2})(t') dt'.
// Every iterate is mean-free, real for real phi, and homogeneous of degree
// k in phi.
struct IterateTable {
    RealField phi;
    int max_order;
    // a[k-1] holds A_k sampled on the lattice.
    std::vector<Trajectory> a;

    const Trajectory& order(int k) const;
};

// Evaluate the recursion on the lattice t_n = n T / round(T / cfg.dt), the
// same lattice evolve uses.  Panel integrals of the twisted integrand
// V(-t') G_k(t') take cfg.quadrature_order Gauss-Legendre nodes per cell;
// iterate values at off-lattice nodes are produced by recursing into the
// lower iterates (cached prefix of whole panels plus a fresh partial
// panel), never by interpolating lattice samples, so the Gauss rule is the
// only error source.  Products are alias-free.  Work per node grows like
// order^(K-2), hence the cost guard K <= 12.
IterateTable picard_iterates(const RealField& phi, int K, double T,
                             const SolverConfig& cfg);

// Closed forms of A_k(t, cos Nx) for k <= 3 on the 2 pi circle, evaluated
// by exact coefficient placement:
//   A_1 = cos(Nx - N^2 t)
//   A_2 = (1/4N) [cos(2Nx - 2N^2 t) - cos(2Nx - 4N^2 t)]
//   A_3 = -(t/8) sin(Nx - N^2 t)
//         + (1/16N^2) [cos(Nx - 3N^2 t) - cos(Nx - N^2 t)]
//         + (1/16N^2) [cos(3Nx - 3N^2 t) - cos(3Nx - 9N^2 t)]
//         - (3/32N^2) [cos(3Nx - 5N^2 t) - cos(3Nx - 9N^2 t)]
// The 3N modes must fit the grid band, which bounds N per order.
RealField closed_form_a(int k, int N, double t, const Grid& grid);

// || evolve(eps phi)(t_n) - sum_{k<=K} eps^k A_k(t_n) ||_{H^s} along the
// shared lattice; the tail starts at order eps^{K+1}.  Blowup of the solver
// propagates.
ResidualSeries series_vs_solver(const RealField& phi, double eps, int K,
                                double T, const SolverConfig& cfg,
                                double s = 0.0);

// One row of the third-iterate scaling sweep at fixed t and s <= 0, with
// psi_N = N^{-s} cos(Nx):
//   ratio = ||A_3(t, psi_N)||_{H^s} / (t N^{-2s} ||psi_N||_{H^s}^3),
// which approaches 1/(8 pi) from the leading term of A_3.  eps_n is the
// initial-size selector min(eps0/2, t/(4 C_K), (t N^s / 4C)^{1/K}) with the
// reference constants eps0 = C_K = C = 1 and K = 4.
struct IllposedRow {
    int n;
    double eps_n;
    double norm_psi;
    double norm_a3;
    double ratio;
};

// Sweep over n_list on a shared grid with M = max(64, 8 max(N)) rounded up
// to a power of two, so the 3N modes are resolved with margin.  A_3 comes
// from the closed form (exact trilinear scaling N^{-3s}); the recursion is
// tied to that form by the oracle-equivalence tests.
std::vector<IllposedRow> illposed_sweep(double s, double t,
                                        const std::vector<int>& n_list);

}  // namespace bo
