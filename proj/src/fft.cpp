#include "bo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace bo::fft {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex planner_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
    static std::map<std::size_t, PlanPair> cache;
    return cache;
}

// FFTW_UNALIGNED lets the cached plan run on any caller buffer via
// fftw_execute_dft.
PlanPair& plans_for(std::size_t n) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(std::vector<std::complex<double>>& a) {
    if (a.empty()) return;
    auto& p = plans_for(a.size());
    auto* buf = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(p.fwd, buf, buf);
}

void backward(std::vector<std::complex<double>>& a) {
    if (a.empty()) return;
    auto& p = plans_for(a.size());
    auto* buf = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(p.bwd, buf, buf);
}

}  // namespace bo::fft
