#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace emlab {

// Deterministic RNG. All randomized recipes take an explicit seed so that
// identical (config, seed, threads) produce identical outputs.
using Rng = std::mt19937_64;

// Runs body(i) for i in [0, n) on up to nthreads workers. Work is split into
// contiguous index ranges so results written to per-index slots are
// independent of the thread count; any reduction must happen afterwards in
// index order.
void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)>& body);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // max |y - fit| over the samples
};

// Least-squares line through (x, y); residual is the max deviation.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Two-segment fit in log-log coordinates with a prescribed breakpoint:
// separate slopes below and above x_break.
struct PiecewiseFit {
    LinearFit below;
    LinearFit above;
    double x_break = 0.0;
    int n_below = 0;
    int n_above = 0;
};
PiecewiseFit fit_piecewise_loglog(const std::vector<double>& x, const std::vector<double>& y,
                                  double x_break);

// FNV-1a over a string, used to fingerprint configs in manifests.
std::uint64_t fnv1a(const std::string& s);

// Shortest round-trippable decimal representation of a double; used by every
// CSV/JSON writer so that emitted files are byte-stable.
std::string format_double(double v);

}  // namespace emlab
