// Test-only oracles, independent of the propagator implementation: a plain
// RK4 integrator for small complex ODE systems, and helpers shared by the
// unit and acceptance suites.
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace emlab::oracle {

using Cx = std::complex<double>;
using CxVec = std::vector<Cx>;

// Classic RK4 on dy/dt = f(t, y) with nsteps fixed steps.
inline CxVec rk4(const std::function<CxVec(double, const CxVec&)>& f, CxVec y, double t0,
                 double t1, long nsteps) {
    double h = (t1 - t0) / nsteps;
    std::size_t d = y.size();
    CxVec k1(d), k2(d), k3(d), k4(d), tmp(d);
    for (long s = 0; s < nsteps; ++s) {
        double t = t0 + s * h;
        k1 = f(t, y);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        k2 = f(t + 0.5 * h, tmp);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        k3 = f(t + 0.5 * h, tmp);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * k3[i];
        k4 = f(t + h, tmp);
        for (std::size_t i = 0; i < d; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y;
}

// Right-hand side of the damped pair d/dt (e,b) = [[-alpha, i k],[i k, 0]](e,b) + (src, 0).
inline std::function<CxVec(double, const CxVec&)> pair_rhs(
    double alpha, double kappa, const std::function<Cx(double)>& src = nullptr) {
    return [alpha, kappa, src](double t, const CxVec& y) {
        Cx ik(0, kappa);
        CxVec dy(2);
        dy[0] = -alpha * y[0] + ik * y[1] + (src ? src(t) : Cx(0, 0));
        dy[1] = ik * y[0];
        return dy;
    };
}

inline double rel_err(const CxVec& a, const CxVec& b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace emlab::oracle
