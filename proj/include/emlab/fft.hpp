#pragma once

#include <complex>
#include <vector>

#include "emlab/grid.hpp"

namespace emlab {

using Complex = std::complex<double>;

// Forward/backward 2D complex transforms for one grid size. Plans are built
// once per size and shared; fftw_execute_dft on distinct buffers is
// thread-safe, so transforms may run concurrently. Convention:
//   spectral_from_physical:  fhat_k = (1/N^2) sum_x f(x) e^{-i xi_k . x}
//   physical_from_spectral:  f(x)   = sum_k fhat_k e^{+i xi_k . x}
class Fft {
  public:
    static const Fft& get(int n);  // cached per grid size

    void forward(const std::vector<Complex>& phys, std::vector<Complex>& spec) const;
    void backward(const std::vector<Complex>& spec, std::vector<Complex>& phys) const;

    int n() const { return n_; }

  private:
    explicit Fft(int n);
    int n_;
    void* plan_fwd_ = nullptr;  // fftw_plan, kept opaque here
    void* plan_bwd_ = nullptr;
};

}  // namespace emlab
