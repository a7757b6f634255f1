#include "emlab/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace emlab {

void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    if (nthreads < 1) nthreads = 1;
    std::size_t workers = std::min<std::size_t>(nthreads, n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    std::exception_ptr err;
    std::mutex err_mtx;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi]() {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mtx);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 matching samples");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.residual = std::max(fit.residual, std::abs(y[i] - fit.slope * x[i] - fit.intercept));
    return fit;
}

PiecewiseFit fit_piecewise_loglog(const std::vector<double>& x, const std::vector<double>& y,
                                  double x_break) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_piecewise_loglog: size mismatch");
    // log10 axes: slopes are base-independent exponents, residuals in decades.
    std::vector<double> xb, yb, xa, ya;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) continue;
        if (x[i] <= x_break) {
            xb.push_back(std::log10(x[i]));
            yb.push_back(std::log10(y[i]));
        } else {
            xa.push_back(std::log10(x[i]));
            ya.push_back(std::log10(y[i]));
        }
    }
    PiecewiseFit out;
    out.x_break = x_break;
    out.n_below = static_cast<int>(xb.size());
    out.n_above = static_cast<int>(xa.size());
    if (out.n_below >= 2) out.below = fit_line(xb, yb);
    if (out.n_above >= 2) out.above = fit_line(xa, ya);
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_double(double v) {
    char buf[64];
    // %.17g round-trips every double and is locale-independent here.
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace emlab
