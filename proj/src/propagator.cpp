#include "emlab/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace emlab {

namespace {
const Complex I(0, 1);

// phi_k(z) = sum_{n>=0} z^n / (n+k)!  evaluated by series; converges to
// machine precision well inside |z| <= 1 with 30 terms.
Complex phi_series(int k, Complex z) {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    Complex term(1.0 / fact, 0.0);
    Complex sum = term;
    for (int n = 1; n <= 30; ++n) {
        term *= z / static_cast<double>(n + k);
        sum += term;
    }
    return sum;
}

// j-th derivative of phi_k by series: phi_k^{(j)}(z) = sum_m (m+j)!/m! *
// z^m / (m+j+k)!.
Complex phi_deriv_series(int k, int j, Complex z) {
    double coeff = 1.0;  // (m+j)!/m! / (m+j+k)! at m = 0  ->  j!/(j+k)!
    for (int i = j + 1; i <= j + k; ++i) coeff /= i;
    for (int i = 2; i <= j; ++i) coeff *= i;
    // coeff = j!/(j+k)!
    Complex term(coeff, 0.0);
    Complex sum = term;
    for (int m = 1; m <= 30; ++m) {
        term *= z * static_cast<double>(m + j) /
                (static_cast<double>(m) * static_cast<double>(m + j + k));
        sum += term;
    }
    return sum;
}

// Derivative table for |z| >= 1 from the recursion
// phi_k^{(j)} = (phi_{k-1}^{(j)} - j phi_k^{(j-1)}) / z, phi_0^{(j)} = e^z.
void phi_deriv_table(Complex z, int jmax, Complex out[3][8]) {
    Complex ez = std::exp(z);
    for (int j = 0; j <= jmax; ++j) out[0][j] = ez;
    out[1][0] = (ez - 1.0) / z;
    out[2][0] = (ez - 1.0 - z) / (z * z);
    for (int k = 1; k <= 2; ++k)
        for (int j = 1; j <= jmax; ++j)
            out[k][j] = (out[k - 1][j] - static_cast<double>(j) * out[k][j - 1]) / z;
}

Complex kernel_deriv(Kernel f, int j, Complex z) {
    switch (f) {
        case Kernel::exp:
            return std::exp(z);
        case Kernel::zexp:
            return (z + static_cast<double>(j)) * std::exp(z);
        case Kernel::phi1:
        case Kernel::phi2: {
            int k = f == Kernel::phi1 ? 1 : 2;
            if (std::abs(z) < 1.0) return phi_deriv_series(k, j, z);
            Complex table[3][8];
            phi_deriv_table(z, j, table);
            return table[k][j];
        }
    }
    return Complex(0, 0);
}

}  // namespace

std::pair<Complex, Complex> damped_eigenvalues(double xi_mag, double alpha) {
    Complex disc = std::sqrt(Complex(alpha * alpha / 4.0 - xi_mag * xi_mag, 0.0));
    Complex lp = -alpha / 2.0 + disc;
    Complex lm = -alpha / 2.0 - disc;
    return {lp, lm};
}

Complex phi1(Complex z) {
    if (std::abs(z) < 1.0) return phi_series(1, z);
    return (std::exp(z) - 1.0) / z;
}

Complex phi2(Complex z) {
    if (std::abs(z) < 1.0) return phi_series(2, z);
    return (std::exp(z) - 1.0 - z) / (z * z);
}

Complex kernel_eval(Kernel f, Complex z) {
    switch (f) {
        case Kernel::exp:
            return std::exp(z);
        case Kernel::zexp:
            return z * std::exp(z);
        case Kernel::phi1:
            return phi1(z);
        case Kernel::phi2:
            return phi2(z);
    }
    return Complex(0, 0);
}

Complex ddiff(Kernel f, Complex zp, Complex zm) {
    Complex h = 0.5 * (zp - zm);
    Complex zbar = 0.5 * (zp + zm);
    double scale = std::max({1.0, std::abs(zp), std::abs(zm)});
    if (std::abs(h) > 1e-4 * scale)
        return (kernel_eval(f, zp) - kernel_eval(f, zm)) / (zp - zm);
    // Near-confluent: even Taylor expansion of the divided difference about
    // the midpoint; the h^4 term leaves O(h^6 f^(7)) truncation error.
    Complex h2 = h * h;
    return kernel_deriv(f, 1, zbar) + kernel_deriv(f, 3, zbar) * h2 / 6.0 +
           kernel_deriv(f, 5, zbar) * h2 * h2 / 120.0;
}

Mat2 pair_func(Kernel f, double alpha, double kappa, double dt) {
    auto [lp, lm] = damped_eigenvalues(kappa, alpha);
    Complex zp = dt * lp, zm = dt * lm;
    Complex b = ddiff(f, zp, zm);
    Complex a = 0.5 * (kernel_eval(f, zp) + kernel_eval(f, zm)) - b * 0.5 * (zp + zm);
    // f(dt M) = a I + b dt M.
    Mat2 m;
    m.m11 = a + b * dt * Complex(-alpha, 0);
    m.m12 = b * dt * I * kappa;
    m.m21 = b * dt * I * kappa;
    m.m22 = a;
    return m;
}

PairOps pair_ops(double alpha, double kappa, double dt) {
    return PairOps{pair_func(Kernel::exp, alpha, kappa, dt),
                   pair_func(Kernel::phi1, alpha, kappa, dt),
                   pair_func(Kernel::phi2, alpha, kappa, dt)};
}

// ---------------------------------------------------------------------------
// MaxwellPropagator
// ---------------------------------------------------------------------------

MaxwellPropagator::MaxwellPropagator(const Grid& g, const PhysParams& params, double dt)
    : grid_(g), params_(params), dt_(dt) {
    params.validate();
    if (!(dt > 0)) throw std::invalid_argument("MaxwellPropagator: dt must be > 0");
    double ac = params.sigma * params.c * params.c;
    ops_.resize(g.size());
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            // In the (e_sol, b) basis the solenoidal block reads
            // [[-sigma c^2, -i c |xi|], [-i c |xi|, 0]]: kappa = -c |xi|.
            double kappa = -params.c * std::hypot(kx, ky);
            ops_[static_cast<std::size_t>(ix) * g.n + iy] = pair_ops(ac, kappa, dt);
        }
    }
    grad_exp_ = std::exp(-ac * dt);
    grad_p1_ = std::real(phi1(Complex(-ac * dt, 0)));
    grad_p2_ = std::real(phi2(Complex(-ac * dt, 0)));
}

namespace {

// Decompose Ehat at one mode into gradient / solenoidal scalar parts.
struct ModeBasis {
    double hx, hy;  // unit wavevector
    bool zero;
    ModeBasis(double kx, double ky) {
        double k = std::hypot(kx, ky);
        zero = (k == 0);
        hx = zero ? 0 : kx / k;
        hy = zero ? 0 : ky / k;
    }
    Complex div_part(Complex ex, Complex ey) const { return hx * ex + hy * ey; }
    Complex sol_part(Complex ex, Complex ey) const { return -hy * ex + hx * ey; }
};

}  // namespace

void MaxwellPropagator::flow(Field2& E, Field& b) const {
    require_same_grid(E.grid(), grid_, "MaxwellPropagator::flow");
    require_same_grid(b.grid(), grid_, "MaxwellPropagator::flow");
    for (int ix = 0; ix < grid_.n; ++ix) {
        double kx = grid_.wavenumber(ix);
        for (int iy = 0; iy < grid_.n; ++iy) {
            double ky = grid_.wavenumber(iy);
            ModeBasis basis(kx, ky);
            Complex ex = E.x.spec(ix, iy), ey = E.y.spec(ix, iy), bb = b.spec(ix, iy);
            if (basis.zero) {
                E.x.spec(ix, iy) = grad_exp_ * ex;
                E.y.spec(ix, iy) = grad_exp_ * ey;
                continue;  // b mean is constant under the linear flow
            }
            Complex ediv = basis.div_part(ex, ey);
            Complex esol = basis.sol_part(ex, ey);
            mode_ops(ix, iy).exp.apply(esol, bb);
            ediv *= grad_exp_;
            E.x.spec(ix, iy) = basis.hx * ediv - basis.hy * esol;
            E.y.spec(ix, iy) = basis.hy * ediv + basis.hx * esol;
            b.spec(ix, iy) = bb;
        }
    }
}

void MaxwellPropagator::etd1(Field2& E, Field& b, const Field2& g0) const {
    require_same_grid(E.grid(), grid_, "MaxwellPropagator::etd1");
    require_same_grid(g0.grid(), grid_, "MaxwellPropagator::etd1");
    double cdt = params_.c * dt_;
    for (int ix = 0; ix < grid_.n; ++ix) {
        double kx = grid_.wavenumber(ix);
        for (int iy = 0; iy < grid_.n; ++iy) {
            double ky = grid_.wavenumber(iy);
            ModeBasis basis(kx, ky);
            Complex ex = E.x.spec(ix, iy), ey = E.y.spec(ix, iy), bb = b.spec(ix, iy);
            Complex gx = g0.x.spec(ix, iy), gy = g0.y.spec(ix, iy);
            if (basis.zero) {
                E.x.spec(ix, iy) = grad_exp_ * ex + cdt * grad_p1_ * gx;
                E.y.spec(ix, iy) = grad_exp_ * ey + cdt * grad_p1_ * gy;
                continue;
            }
            Complex ediv = basis.div_part(ex, ey);
            Complex esol = basis.sol_part(ex, ey);
            Complex gdiv = basis.div_part(gx, gy);
            Complex gsol = basis.sol_part(gx, gy);
            const PairOps& op = mode_ops(ix, iy);
            op.exp.apply(esol, bb);
            // Source enters the pair as (c g_sol, 0).
            esol += cdt * (op.p1.m11 * gsol);
            bb += cdt * (op.p1.m21 * gsol);
            ediv = grad_exp_ * ediv + cdt * grad_p1_ * gdiv;
            E.x.spec(ix, iy) = basis.hx * ediv - basis.hy * esol;
            E.y.spec(ix, iy) = basis.hy * ediv + basis.hx * esol;
            b.spec(ix, iy) = bb;
        }
    }
}

void MaxwellPropagator::etd2_correct(Field2& E, Field& b, const Field2& g0,
                                     const Field2& g1) const {
    double cdt = params_.c * dt_;
    for (int ix = 0; ix < grid_.n; ++ix) {
        double kx = grid_.wavenumber(ix);
        for (int iy = 0; iy < grid_.n; ++iy) {
            double ky = grid_.wavenumber(iy);
            ModeBasis basis(kx, ky);
            Complex dx = g1.x.spec(ix, iy) - g0.x.spec(ix, iy);
            Complex dy = g1.y.spec(ix, iy) - g0.y.spec(ix, iy);
            if (basis.zero) {
                E.x.spec(ix, iy) += cdt * grad_p2_ * dx;
                E.y.spec(ix, iy) += cdt * grad_p2_ * dy;
                continue;
            }
            Complex ddiv = basis.div_part(dx, dy);
            Complex dsol = basis.sol_part(dx, dy);
            const PairOps& op = mode_ops(ix, iy);
            Complex ex = E.x.spec(ix, iy), ey = E.y.spec(ix, iy);
            Complex esol_inc = cdt * (op.p2.m11 * dsol);
            Complex b_inc = cdt * (op.p2.m21 * dsol);
            Complex ediv_inc = cdt * grad_p2_ * ddiv;
            E.x.spec(ix, iy) = ex + basis.hx * ediv_inc - basis.hy * esol_inc;
            E.y.spec(ix, iy) = ey + basis.hy * ediv_inc + basis.hx * esol_inc;
            b.spec(ix, iy) += b_inc;
        }
    }
}

void maxwell_flow_at(const Grid& g, const PhysParams& params, double t, Field2& E, Field& b) {
    MaxwellPropagator prop(g, params, t);
    prop.flow(E, b);
}

// ---------------------------------------------------------------------------
// ScalarFlow
// ---------------------------------------------------------------------------

ScalarFlow::ScalarFlow(const Grid& g, ScalarKind kind, double alpha)
    : grid_(g), kind_(kind), alpha_(alpha) {
    if (alpha < 0) throw std::invalid_argument("ScalarFlow: alpha must be >= 0");
}

void ScalarFlow::wave_pair_at(const Field& f, const Field& g, double t, Field& e, Field& b) const {
    if (kind_ != ScalarKind::wave) throw std::logic_error("wave_pair_at: kind must be wave");
    require_same_grid(f.grid(), grid_, "wave_pair_at");
    e = Field(grid_);
    b = Field(grid_);
    for (int ix = 0; ix < grid_.n; ++ix) {
        double kx = grid_.wavenumber(ix);
        for (int iy = 0; iy < grid_.n; ++iy) {
            double ky = grid_.wavenumber(iy);
            double xi = std::hypot(kx, ky);
            Complex ev = g.spec(ix, iy);
            Complex bv = I * xi * f.spec(ix, iy);
            pair_func(Kernel::exp, alpha_, xi, t).apply(ev, bv);
            e.spec(ix, iy) = ev;
            b.spec(ix, iy) = bv;
        }
    }
}

Field ScalarFlow::state_at(const Field& f, double t) const {
    require_same_grid(f.grid(), grid_, "ScalarFlow::state_at");
    Field out(grid_);
    for (int ix = 0; ix < grid_.n; ++ix) {
        double kx = grid_.wavenumber(ix);
        for (int iy = 0; iy < grid_.n; ++iy) {
            double ky = grid_.wavenumber(iy);
            double xi2 = kx * kx + ky * ky;
            Complex symbol;
            if (kind_ == ScalarKind::schrodinger)
                symbol = std::exp(t * Complex(-alpha_, -xi2));
            else if (kind_ == ScalarKind::halfwave)
                symbol = std::exp(t * Complex(-alpha_, std::sqrt(xi2)));
            else
                throw std::logic_error("state_at: use wave_pair_at for the wave kind");
            out.spec(ix, iy) = symbol * f.spec(ix, iy);
        }
    }
    return out;
}

ScalarTrajectory scalar_propagator(ScalarKind kind, double alpha, const Field& f, const Field& g,
                                   const std::function<Field(double)>* source, double t_end,
                                   double dt) {
    const Grid& grid = f.grid();
    if (!(dt > 0) || !(t_end > 0)) throw std::invalid_argument("scalar_propagator: dt, t_end > 0");
    long nsteps = std::lround(t_end / dt);
    if (std::abs(nsteps * dt - t_end) > 1e-9 * t_end)
        throw std::invalid_argument("scalar_propagator: dt must divide t_end");

    ScalarTrajectory traj;
    auto push = [&](double time, const Field& u, const Field* e) {
        traj.times.push_back(time);
        traj.u.push_back(u);
        if (e) traj.dudt.push_back(*e);
    };

    if (kind == ScalarKind::wave) {
        // Evolve the pair (e, b) with ETD2RK; u recovered from b = i|D|u.
        Field e = g, b(grid);
        for (int ix = 0; ix < grid.n; ++ix)
            for (int iy = 0; iy < grid.n; ++iy) {
                double xi = std::hypot(grid.wavenumber(ix), grid.wavenumber(iy));
                b.spec(ix, iy) = I * xi * f.spec(ix, iy);
            }
        // Cache ops per distinct |xi| is possible; sizes here are small, so
        // build the per-mode ops once.
        std::vector<PairOps> ops(grid.size());
        for (int ix = 0; ix < grid.n; ++ix)
            for (int iy = 0; iy < grid.n; ++iy) {
                double xi = std::hypot(grid.wavenumber(ix), grid.wavenumber(iy));
                ops[static_cast<std::size_t>(ix) * grid.n + iy] = pair_ops(alpha, xi, dt);
            }
        Field u0 = f;
        push(0.0, u0, &e);
        Field fcur = source ? (*source)(0.0) : Field(grid);
        for (long s = 0; s < nsteps; ++s) {
            double t1 = (s + 1) * dt;
            Field e1 = e, b1 = b;
            for (int ix = 0; ix < grid.n; ++ix)
                for (int iy = 0; iy < grid.n; ++iy) {
                    const PairOps& op = ops[static_cast<std::size_t>(ix) * grid.n + iy];
                    Complex ev = e1.spec(ix, iy), bv = b1.spec(ix, iy);
                    op.exp.apply(ev, bv);
                    if (source) {
                        Complex fv = fcur.spec(ix, iy);
                        ev += dt * op.p1.m11 * fv;
                        bv += dt * op.p1.m21 * fv;
                    }
                    e1.spec(ix, iy) = ev;
                    b1.spec(ix, iy) = bv;
                }
            if (source) {
                Field fnext = (*source)(t1);
                for (int ix = 0; ix < grid.n; ++ix)
                    for (int iy = 0; iy < grid.n; ++iy) {
                        const PairOps& op = ops[static_cast<std::size_t>(ix) * grid.n + iy];
                        Complex dv = fnext.spec(ix, iy) - fcur.spec(ix, iy);
                        e1.spec(ix, iy) += dt * op.p2.m11 * dv;
                        b1.spec(ix, iy) += dt * op.p2.m21 * dv;
                    }
                fcur = fnext;
            }
            e = e1;
            b = b1;
            // u from b: uhat = bhat / (i |xi|); zero mode stays zero.
            Field u(grid);
            for (int ix = 0; ix < grid.n; ++ix)
                for (int iy = 0; iy < grid.n; ++iy) {
                    double xi = std::hypot(grid.wavenumber(ix), grid.wavenumber(iy));
                    if (xi > 0) u.spec(ix, iy) = b.spec(ix, iy) / (I * xi);
                }
            push(t1, u, &e);
        }
        return traj;
    }

    // First-order kinds: uhat' = lambda(xi) uhat + Fhat.
    Field u = f;
    push(0.0, u, nullptr);
    Field fcur = source ? (*source)(0.0) : Field(grid);
    for (long s = 0; s < nsteps; ++s) {
        double t1 = (s + 1) * dt;
        Field fnext = source ? (*source)(t1) : Field(grid);
        for (int ix = 0; ix < grid.n; ++ix)
            for (int iy = 0; iy < grid.n; ++iy) {
                double kx = grid.wavenumber(ix), ky = grid.wavenumber(iy);
                double xi2 = kx * kx + ky * ky;
                Complex lam = kind == ScalarKind::schrodinger ? Complex(-alpha, -xi2)
                                                              : Complex(-alpha, std::sqrt(xi2));
                Complex z = dt * lam;
                Complex uv = std::exp(z) * u.spec(ix, iy);
                if (source) {
                    uv += dt * phi1(z) * fcur.spec(ix, iy);
                    uv += dt * phi2(z) * (fnext.spec(ix, iy) - fcur.spec(ix, iy));
                }
                u.spec(ix, iy) = uv;
            }
        fcur = fnext;
        push(t1, u, nullptr);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// WaveMultipliers
// ---------------------------------------------------------------------------

namespace {

Complex multiplier_core(Kernel which, double xi, double t, double alpha) {
    auto [lp, lm] = damped_eigenvalues(xi, alpha);
    Complex zp = t * lp, zm = t * lm;
    switch (which) {
        case Kernel::exp:  // (e^{t l+} - e^{t l-})/(l+ - l-) = t exp[zp, zm]
            return t * ddiff(Kernel::exp, zp, zm);
        case Kernel::zexp:  // (l+ e^{t l+} - l- e^{t l-})/(l+ - l-) = zexp[zp, zm]
            return ddiff(Kernel::zexp, zp, zm);
        default:
            throw std::logic_error("multiplier_core: unsupported kernel");
    }
}

}  // namespace

Complex WaveMultipliers::m1_at(double xi, double t, double alpha, double A) {
    return multiplier_core(Kernel::exp, xi, t, alpha) *
           std::exp(alpha > 0 ? A * t * xi * xi / alpha : 0.0);
}

Complex WaveMultipliers::m2_at(double xi, double t, double alpha, double A) {
    return multiplier_core(Kernel::zexp, xi, t, alpha) *
           std::exp(alpha > 0 ? A * t * xi * xi / alpha : 0.0);
}

Complex WaveMultipliers::m3_at(double xi, double t, double alpha, double A) {
    // l- e^{t l+} - l+ e^{t l-} = (l+ + l-)(e^{t l+} - e^{t l-}) - (l+ e^{t l+} - l- e^{t l-})
    Complex v = -alpha * multiplier_core(Kernel::exp, xi, t, alpha) -
                multiplier_core(Kernel::zexp, xi, t, alpha);
    return v * std::exp(alpha > 0 ? A * t * xi * xi / alpha : 0.0);
}

WaveMultipliers WaveMultipliers::evaluate(const Grid& g, double t, double alpha, double A) {
    WaveMultipliers wm;
    wm.t = t;
    wm.alpha = alpha;
    wm.A = A;
    std::size_t sz = g.size();
    wm.m1.resize(sz);
    wm.m2.resize(sz);
    wm.m2p.resize(sz);
    wm.m2m.resize(sz);
    wm.m3.resize(sz);
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            double xi = std::hypot(kx, ky);
            std::size_t idx = static_cast<std::size_t>(ix) * g.n + iy;
            wm.m1[idx] = m1_at(xi, t, alpha, A);
            wm.m2[idx] = m2_at(xi, t, alpha, A);
            wm.m3[idx] = m3_at(xi, t, alpha, A);
            auto [lp, lm] = damped_eigenvalues(xi, alpha);
            Complex gap = lp - lm;
            double heat = alpha > 0 ? std::exp(A * t * xi * xi / alpha) : 1.0;
            // The split pieces are only finite away from the degenerate
            // circle; they are meant for the strongly damped range
            // |xi| <= alpha/4.
            if (std::abs(gap) > 0 && xi > 0) {
                wm.m2p[idx] = lp * std::exp(t * lp) / (xi * xi * gap) * heat;
                wm.m2m[idx] = lm * std::exp(t * lm) / gap *
                              (alpha > 0 ? std::exp(A * t * alpha) : 1.0);
            }
        }
    }
    return wm;
}

}  // namespace emlab
