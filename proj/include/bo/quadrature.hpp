#pragma once

#include <vector>

namespace bo {

struct QuadratureRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with m nodes (exact for polynomials of degree 2m - 1).
// Computed once per m by Newton iteration on the Legendre recurrence and
// cached.
const QuadratureRule& gauss_legendre(int m);

}  // namespace bo
