#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "emlab/initial_data.hpp"
#include "emlab/spectral_ops.hpp"
#include "emlab/util.hpp"

using namespace emlab;

namespace {

Field sine_x1(const Grid& g) {
    std::vector<double> phys(g.size());
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            phys[static_cast<std::size_t>(i) * g.n + j] = std::sin(g.dk() * i * g.dx());
    return Field::from_physical_values(g, phys);
}

Field random_band_limited(const Grid& g, std::uint64_t seed) {
    Rng rng(seed);
    return random_smooth_field(g, rng, 1.0, g.max_wavenumber() / 2, g.dealias_radius());
}

// Injects a coarse-grid field onto a finer grid (mode-for-mode).
Field inject(const Field& f, const Grid& fine) {
    Field out(fine);
    const Grid& g = f.grid();
    for (int ix = 0; ix < g.n; ++ix) {
        int kx = g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            int ky = g.mode(iy);
            out.at_mode(kx, ky) = f.at_mode(kx, ky);
        }
    }
    return out;
}

// Restricts a fine-grid field to the modes of a coarse grid.
Field restrict_to(const Field& f, const Grid& coarse) {
    Field out(coarse);
    for (int ix = 0; ix < coarse.n; ++ix) {
        int kx = coarse.mode(ix);
        for (int iy = 0; iy < coarse.n; ++iy) {
            int ky = coarse.mode(iy);
            out.at_mode(kx, ky) = f.at_mode(kx, ky);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid(7, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(24, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(32, 0.0), std::invalid_argument);
    Grid g(16, 2 * M_PI);
    // Wavenumber lattice symmetric under negation except the Nyquist row.
    for (int k = 1; k < g.n / 2; ++k)
        CHECK(g.wavenumber(g.index_of(k)) == -g.wavenumber(g.index_of(-k)));
    CHECK(g.mode(g.n / 2) == -g.n / 2);
}

TEST_CASE("round trip physical-spectral-physical") {
    Grid g(64, 2 * M_PI);
    Field f = random_band_limited(g, 11);
    std::vector<double> phys = f.to_physical();
    Field f2 = Field::from_physical_values(g, phys);
    double rel = (f2 - f).l2_spectral() / f.l2_spectral();
    CHECK(rel < 1e-13);
}

TEST_CASE("leray annihilates gradients and fixes solenoidal fields") {
    for (int n : {16, 32, 64}) {
        Grid g(n, 2 * M_PI);
        // v = grad h, h = sin(x1) -> projected to zero.
        Field h = sine_x1(g);
        Field2 gradh(ddx(h), ddy(h));
        Field2 pg = leray_project(gradh);
        CHECK(pg.l2_spectral() < 1e-13 * gradh.l2_spectral());

        // Solenoidal v = (-sin x2, sin x1) is fixed to 1e-13 relative.
        std::vector<double> vx(g.size()), vy(g.size());
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                vx[static_cast<std::size_t>(i) * g.n + j] = -std::sin(g.dk() * j * g.dx());
                vy[static_cast<std::size_t>(i) * g.n + j] = std::sin(g.dk() * i * g.dx());
            }
        Field2 v(Field::from_physical_values(g, vx), Field::from_physical_values(g, vy));
        Field2 pv = leray_project(v);
        CHECK((pv - v).l2_spectral() < 1e-13 * v.l2_spectral());

        // Idempotence on random band-limited fields.
        Field2 w(random_band_limited(g, 100 + n), random_band_limited(g, 200 + n));
        Field2 p1 = leray_project(w);
        Field2 p2 = leray_project(p1);
        CHECK((p2 - p1).l2_spectral() <= 1e-13 * (p1.l2_spectral() + 1e-30));
        CHECK(divergence_sup_spectral(p1) < 1e-12 * (1.0 + w.l2_spectral()));
    }
}

TEST_CASE("leray rejects mismatched grids") {
    Grid a(16, 2 * M_PI), b(32, 2 * M_PI);
    CHECK_THROWS_AS(Field2(Field(a), Field(b)), std::invalid_argument);
}

TEST_CASE("biot-savart single mode and round trip") {
    Grid g(32, 2 * M_PI);
    // omega = sin(x1) -> u = (0, -cos(x1)).
    Field omega = sine_x1(g);
    Field2 u = biot_savart(omega);
    std::vector<double> ux = u.x.to_physical(), uy = u.y.to_physical();
    double worst = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            double x = g.dk() * i * g.dx();
            worst = std::max(worst, std::abs(ux[static_cast<std::size_t>(i) * g.n + j]));
            worst = std::max(worst, std::abs(uy[static_cast<std::size_t>(i) * g.n + j] +
                                             std::cos(x)));
        }
    CHECK(worst < 1e-12);

    // omega = 0 -> u = 0.
    CHECK(biot_savart(Field(g)).l2_spectral() == 0.0);

    // Round trip: curl2(biot_savart(omega)) == omega for random data.
    Field w = random_band_limited(g, 7);
    Field back = curl2(biot_savart(w));
    CHECK((back - w).l2_spectral() / w.l2_spectral() < 1e-12);
    CHECK(divergence_sup_spectral(biot_savart(w)) < 1e-12);

    // Nonzero mean input is rejected.
    Field bad(g);
    bad.at_mode(0, 0) = Complex(1.0, 0);
    CHECK_THROWS_AS(biot_savart(bad), std::invalid_argument);
}

TEST_CASE("cross_normal algebraic identity on the constant-mode path") {
    Grid g(16, 2 * M_PI);
    Field2 u(g);
    Field b(g);
    u.x.at_mode(0, 0) = Complex(1, 0);  // u = (1, 0)
    b.at_mode(0, 0) = Complex(1, 0);    // b = 1
    Field2 c = cross_normal(u, b);
    CHECK(std::abs(c.x.at_mode(0, 0)) < 1e-14);
    CHECK(std::abs(c.y.at_mode(0, 0) - Complex(-1, 0)) < 1e-14);

    Field2 zero(g);
    CHECK(cross_normal(zero, b).l2_spectral() == 0.0);
}

TEST_CASE("cross_normal matches the oversampled-product oracle") {
    Grid g(32, 2 * M_PI), fine(64, 2 * M_PI);
    Field2 u(random_band_limited(g, 21), random_band_limited(g, 22));
    Field b = random_band_limited(g, 23);

    Field2 got = cross_normal(u, b);

    // Oracle: the same product computed alias-free on a 2x grid, restricted.
    Field fx = multiply_raw(inject(u.y, fine), inject(b, fine));
    Field fy = multiply_raw(inject(u.x, fine), inject(b, fine)) * (-1.0);
    Field ox = restrict_to(fx, g);
    Field oy = restrict_to(fy, g);
    ox.truncate(g.dealias_radius());
    oy.truncate(g.dealias_radius());
    Field2 want(ox, oy);
    CHECK((got - want).l2_spectral() / want.l2_spectral() < 1e-12);
}

TEST_CASE("grad_dot directional derivative and skew symmetry") {
    Grid g(32, 2 * M_PI);
    Field2 u(g);
    u.x.at_mode(0, 0) = Complex(1, 0);  // u = (1, 0)
    Field f = sine_x1(g);
    Field adv = grad_dot(u, f);
    std::vector<double> phys = adv.to_physical();
    double worst = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            double x = g.dk() * i * g.dx();
            worst = std::max(worst,
                             std::abs(phys[static_cast<std::size_t>(i) * g.n + j] - std::cos(x)));
        }
    CHECK(worst < 1e-12);

    CHECK(grad_dot(u, Field(g)).l2_spectral() == 0.0);

    // <u . grad f, f> = 0 for div-free u, quantified over 100 seeds.
    for (int s = 0; s < 100; ++s) {
        Field omega = random_band_limited(g, 1000 + s);
        Field2 udiv = biot_savart(omega);
        Field ff = random_band_limited(g, 2000 + s);
        double ip = inner_l2(grad_dot(udiv, ff), ff);
        double scale = lp_norm(ff, 2.0);
        CHECK(std::abs(ip) < 1e-12 * scale * scale * (1.0 + lp_norm(udiv, inf)));
    }
}

TEST_CASE("lp_norm quadrature") {
    Grid g(64, 2 * M_PI);
    Field f = sine_x1(g);
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(2.0 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(lp_norm(Field(g), 2.0) == 0.0);
    double dx2 = std::pow(2 * M_PI / g.n, 2.0);
    CHECK(std::abs(lp_norm(f, inf) - 1.0) <= dx2);
    CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);
}

TEST_CASE("parseval identity") {
    Grid g(64, 2 * M_PI);
    Field f = random_band_limited(g, 31);
    double quad = lp_norm(f, 2.0);
    double spec = f.l2_spectral();
    CHECK(std::abs(quad * quad - spec * spec) < 1e-12 * spec * spec);
}
