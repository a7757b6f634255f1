#include "emlab/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emlab {

namespace {
const Complex I(0, 1);
}

Field ddx(const Field& f) {
    const Grid& g = f.grid();
    Field out(g);
    for (int ix = 0; ix < g.n; ++ix) {
        double xi = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) out.spec(ix, iy) = I * xi * f.spec(ix, iy);
    }
    return out;
}

Field ddy(const Field& f) {
    const Grid& g = f.grid();
    Field out(g);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            out.spec(ix, iy) = I * g.wavenumber(iy) * f.spec(ix, iy);
    return out;
}

Field laplacian(const Field& f) {
    const Grid& g = f.grid();
    Field out(g);
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            out.spec(ix, iy) = -(kx * kx + ky * ky) * f.spec(ix, iy);
        }
    }
    return out;
}

Field2 leray_project(const Field2& v) {
    require_same_grid(v.x.grid(), v.y.grid(), "leray_project");
    const Grid& g = v.grid();
    Field2 out(g);
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            double k2 = kx * kx + ky * ky;
            Complex vx = v.x.spec(ix, iy), vy = v.y.spec(ix, iy);
            if (k2 == 0) {
                out.x.spec(ix, iy) = vx;
                out.y.spec(ix, iy) = vy;
                continue;
            }
            Complex kd = (kx * vx + ky * vy) / k2;
            out.x.spec(ix, iy) = vx - kx * kd;
            out.y.spec(ix, iy) = vy - ky * kd;
        }
    }
    return out;
}

Field divergence(const Field2& v) {
    Field out = ddx(v.x);
    out += ddy(v.y);
    return out;
}

Field curl2(const Field2& v) {
    Field out = ddx(v.y);
    out -= ddy(v.x);
    return out;
}

Field2 biot_savart(const Field& omega) {
    if (omega.mean_coeff_abs() > 1e-14 * (1.0 + omega.l2_spectral()))
        throw std::invalid_argument("biot_savart: vorticity must have zero mean");
    const Grid& g = omega.grid();
    Field2 u(g);
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            double k2 = kx * kx + ky * ky;
            if (k2 == 0) continue;
            // u = grad^perp psi, Delta psi = omega  =>  uhat = i(-ky, kx) * (-what/k2)
            Complex psi = -omega.spec(ix, iy) / k2;
            u.x.spec(ix, iy) = I * (-ky) * psi;
            u.y.spec(ix, iy) = I * kx * psi;
        }
    }
    return u;
}

Field multiply_raw(const Field& a, const Field& b) {
    require_same_grid(a.grid(), b.grid(), "multiply");
    std::vector<double> pa = a.to_physical();
    std::vector<double> pb = b.to_physical();
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return Field::from_physical_values(a.grid(), pa);
}

Field multiply_dealiased(const Field& a, const Field& b) {
    Field p = multiply_raw(a, b);
    p.truncate(a.grid().dealias_radius());
    return p;
}

Field2 cross_normal(const Field2& u, const Field& b) {
    require_same_grid(u.grid(), b.grid(), "cross_normal");
    return Field2(multiply_dealiased(u.y, b), multiply_dealiased(u.x, b) * (-1.0));
}

Field grad_dot(const Field2& u, const Field& f) {
    require_same_grid(u.grid(), f.grid(), "grad_dot");
    Field out = multiply_dealiased(u.x, ddx(f));
    out += multiply_dealiased(u.y, ddy(f));
    return out;
}

double lp_norm(const Field& f, double p) {
    if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> phys = f.to_physical();
    const Grid& g = f.grid();
    if (std::isinf(p)) {
        double m = 0;
        for (double v : phys) m = std::max(m, std::abs(v));
        return m;
    }
    double cell = g.dx() * g.dx();
    double s = 0;
    for (double v : phys) s += std::pow(std::abs(v), p);
    return std::pow(cell * s, 1.0 / p);
}

double lp_norm(const Field2& f, double p) {
    if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> px = f.x.to_physical();
    std::vector<double> py = f.y.to_physical();
    const Grid& g = f.grid();
    if (std::isinf(p)) {
        double m = 0;
        for (std::size_t i = 0; i < px.size(); ++i)
            m = std::max(m, std::hypot(px[i], py[i]));
        return m;
    }
    double cell = g.dx() * g.dx();
    double s = 0;
    for (std::size_t i = 0; i < px.size(); ++i)
        s += std::pow(std::hypot(px[i], py[i]), p);
    return std::pow(cell * s, 1.0 / p);
}

double inner_l2(const Field& a, const Field& b) {
    require_same_grid(a.grid(), b.grid(), "inner_l2");
    std::vector<double> pa = a.to_physical();
    std::vector<double> pb = b.to_physical();
    double cell = a.grid().dx() * a.grid().dx();
    double s = 0;
    for (std::size_t i = 0; i < pa.size(); ++i) s += pa[i] * pb[i];
    return cell * s;
}

double divergence_sup_spectral(const Field2& v) {
    const Grid& g = v.grid();
    double m = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            m = std::max(m, std::abs(kx * v.x.spec(ix, iy) + ky * v.y.spec(ix, iy)));
        }
    }
    return m;
}

}  // namespace emlab
