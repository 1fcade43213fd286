#pragma once

#include "bo/evolution.hpp"
#include "bo/field.hpp"

namespace bo {

// Gauge companions of one mean-free real state u:
//   F = the mean-free primitive of u,
//   W = P_+(e^{-iF/2}),
//   w = W_x = -(i/2) P_+(e^{-iF/2} u).
// All fields live on the grid of u.
struct GaugeBundle {
    RealField u;
    RealField F;
    SpectralField W;
    SpectralField w;
};

// Exponentials are evaluated pointwise on a 2x oversampled grid and
// projected; the discarded spectral tail of the analytic phase factor is far
// below the 1e-10 scale the identity checks certify.
GaugeBundle make_gauge(const RealField& u);

// Reconstruct u from its bundle:
//   u = 2i e^{iF/2} w + 2i e^{iF/2} d/dx P_-(e^{-iF/2}).
RealField invert_gauge(const GaugeBundle& b);

// L^2 defect of the negative-mode inversion
//   P_- u = -2i P_-(e^{-iF/2} conj(w)) - 2i P_-(e^{-iF/2} d/dx P_+(e^{iF/2})).
double check_negative_mode_identity(const RealField& u);

// L^2 defect of the inversion restricted to frequencies above one:
//   P_{>1} u = 2i P_{>1}(e^{iF/2} w)
//            + 2i P_{>1}( P_{>1}(e^{iF/2}) d/dx P_-(e^{-iF/2}) ).
double check_highmode_inversion(const RealField& u);

// L^2 residuals of the gauge-side equations along a trajectory of the flow,
// with the same strided 4th-order time stencil as residual_bo:
//   F:  F_t + H F_xx = F_x^2 / 2 - P_0(F_x^2) / 2
//   w:  w_t - i w_xx = -d/dx P_+(W P_-(u_x)) + (i/4) P_0(F_x^2) w
//   w2: w_t - i w_xx = 2i d/dx P_+(W d/dx P_-(e^{-iF/2} conj(w)))
//                    + 2i d/dx P_+(W d/dx P_-(e^{-iF/2} d/dx P_+(e^{iF/2})))
//                    + (i/4) P_0(F_x^2) w
// where P_0(F_x^2) is the constant mean of u^2.
ResidualSeries residual_F_eq(const Trajectory& u, int stride = 8);
ResidualSeries residual_w_eq(const Trajectory& u, int stride = 8);
ResidualSeries residual_w_eq2(const Trajectory& u, int stride = 8);

}  // namespace bo
