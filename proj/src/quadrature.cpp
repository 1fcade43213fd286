#include "bo/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bo {

namespace {

QuadratureRule compute(int m) {
    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_m(x) and its derivative.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int m) {
    if (m < 1 || m > 32)
        throw std::invalid_argument("gauss_legendre: order must be in [1, 32]");
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, compute(m)).first;
    return it->second;
}

}  // namespace bo
