#pragma once

#include <complex>
#include <vector>

namespace bo::fft {

// In-place unnormalized complex DFTs (backward carries no 1/n factor).
// Plans are cached per size and created with FFTW_ESTIMATE so plan choice is
// deterministic; creation is serialized behind a mutex because the FFTW
// planner is not thread safe.  Execution on distinct buffers is safe to run
// concurrently.
void forward(std::vector<std::complex<double>>& a);
void backward(std::vector<std::complex<double>>& a);

}  // namespace bo::fft
