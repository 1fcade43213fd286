#pragma once

#include <stdexcept>
#include <string>

namespace bo {

// Thrown when an operation that needs a mean-free field sees a nonzero
// xi = 0 coefficient.  The offending coefficient magnitude is reported.
struct MeanNotZeroError : std::runtime_error {
    explicit MeanNotZeroError(double zero_coeff)
        : std::runtime_error("field is not mean-free: |coeff(0)| = " +
                             std::to_string(zero_coeff)) {}
};

// Thrown by binary operations whose operands live on different grids.
struct GridMismatchError : std::runtime_error {
    GridMismatchError() : std::runtime_error("operands live on different grids") {}
};

// Thrown by the time stepper when the sup norm crosses the configured guard.
struct BlowupError : std::runtime_error {
    BlowupError(double t, double linf)
        : std::runtime_error("sup norm " + std::to_string(linf) +
                             " crossed the blowup guard at t = " + std::to_string(t)),
          time(t), sup_norm(linf) {}
    double time;
    double sup_norm;
};

// Thrown by the experiment-config layer; the message names the offending key.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bo
