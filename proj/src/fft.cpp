#include "emlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace emlab {

namespace {
std::mutex planner_mutex;  // FFTW planner is not thread-safe
}

Fft::Fft(int n) : n_(n) {
    std::lock_guard<std::mutex> lk(planner_mutex);
    std::vector<Complex> a(static_cast<std::size_t>(n) * n), b(a.size());
    // FFTW_UNALIGNED lets the plans run on ordinary std::vector storage.
    plan_fwd_ = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("Fft: plan creation failed");
}

const Fft& Fft::get(int n) {
    static std::mutex cache_mutex;
    static std::map<int, const Fft*> cache;
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, new Fft(n)).first;
    return *it->second;
}

void Fft::forward(const std::vector<Complex>& phys, std::vector<Complex>& spec) const {
    spec.resize(phys.size());
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(phys.data())),
                     reinterpret_cast<fftw_complex*>(spec.data()));
    double scale = 1.0 / (static_cast<double>(n_) * n_);
    for (auto& c : spec) c *= scale;
}

void Fft::backward(const std::vector<Complex>& spec, std::vector<Complex>& phys) const {
    phys.resize(spec.size());
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(spec.data())),
                     reinterpret_cast<fftw_complex*>(phys.data()));
}

}  // namespace emlab
