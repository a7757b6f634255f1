#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "emlab/initial_data.hpp"
#include "emlab/propagator.hpp"
#include "emlab/util.hpp"
#include "oracles.hpp"

using namespace emlab;
using oracle::Cx;
using oracle::CxVec;

TEST_CASE("eigenvalue substitution values and identities") {
    auto [lp0, lm0] = damped_eigenvalues(1.0, 0.0);
    CHECK(std::abs(lp0 - Cx(0, 1)) < 1e-15);
    CHECK(std::abs(lm0 - Cx(0, -1)) < 1e-15);

    auto [lp1, lm1] = damped_eigenvalues(1.0, 2.0);  // zero discriminant
    CHECK(std::abs(lp1 - Cx(-1, 0)) < 1e-15);
    CHECK(std::abs(lm1 - Cx(-1, 0)) < 1e-15);

    auto [lp2, lm2] = damped_eigenvalues(0.3, 1.0);
    CHECK(std::abs(lp2 - Cx(-0.1, 0)) < 1e-14);
    CHECK(std::abs(lm2 - Cx(-0.9, 0)) < 1e-14);

    // lambda_+ + lambda_- = -alpha and lambda_+ lambda_- = xi^2, 1e4 draws.
    Rng rng(99);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int i = 0; i < 10000; ++i) {
        double xi = u(rng), alpha = u(rng);
        auto [lp, lm] = damped_eigenvalues(xi, alpha);
        CHECK(std::abs(lp + lm + alpha) < 1e-14 * (1.0 + alpha));
        CHECK(std::abs(lp * lm - xi * xi) < 1e-13 * (1.0 + xi * xi));
    }
}

TEST_CASE("phi function evaluation across the series boundary") {
    for (double mag : {0.5, 0.999, 1.001, 3.0}) {
        for (double arg : {0.0, 1.2, M_PI / 2, 3.0}) {
            Cx z = std::polar(mag, arg);
            CHECK(std::abs(phi1(z) - (std::exp(z) - 1.0) / z) < 1e-13);
            CHECK(std::abs(phi2(z) - (std::exp(z) - 1.0 - z) / (z * z)) < 1e-12);
        }
    }
}

TEST_CASE("divided differences stay continuous through the degeneracy") {
    // (e^{t l+} - e^{t l-})/(l+ - l-) approaches t e^{-alpha t / 2}.
    double alpha = 2.0, t = 1.7;
    for (double off : {-1e-6, 1e-6}) {
        double xi = alpha / 2.0 + off;
        auto [lp, lm] = damped_eigenvalues(xi, alpha);
        Complex dd = t * ddiff(Kernel::exp, t * lp, t * lm);
        double limit = t * std::exp(-alpha * t / 2.0);
        CHECK(std::abs(dd - limit) < 1e-6);
    }
    // Same continuity through the wave multipliers (heat factor divided out).
    double A = 0.25;
    for (double off : {-1e-6, 0.0, 1e-6}) {
        double xi = alpha / 2.0 + off;
        Complex m1 = WaveMultipliers::m1_at(xi, t, alpha, A) /
                     std::exp(A * t * xi * xi / alpha);
        CHECK(std::abs(m1 - t * std::exp(-alpha * t / 2.0)) < 1e-6);
        Complex m2 = WaveMultipliers::m2_at(xi, t, alpha, A) /
                     std::exp(A * t * xi * xi / alpha);
        // m2 -> e^{t l}(1 + t l) at the double root l = -alpha/2.
        double l = -alpha / 2.0;
        CHECK(std::abs(m2 - std::exp(t * l) * (1.0 + t * l)) < 1e-6);
        Complex m3 = WaveMultipliers::m3_at(xi, t, alpha, A) /
                     std::exp(A * t * xi * xi / alpha);
        // m3 -> e^{t l}(t l - 1) at the double root.
        CHECK(std::abs(m3 - std::exp(t * l) * (t * l - 1.0)) < 1e-6);
    }
}

TEST_CASE("semigroup property per mode") {
    Rng rng(17);
    std::uniform_real_distribution<double> u(0.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        double alpha = u(rng), kappa = u(rng);
        double dt1 = 0.05 + 0.1 * u(rng), dt2 = 0.05 + 0.1 * u(rng);
        Mat2 a = pair_func(Kernel::exp, alpha, kappa, dt1);
        Mat2 b = pair_func(Kernel::exp, alpha, kappa, dt2);
        Mat2 c = pair_func(Kernel::exp, alpha, kappa, dt1 + dt2);
        Cx e(0.3, -0.7), v(1.1, 0.2);
        Cx e1 = e, v1 = v;
        a.apply(e1, v1);
        b.apply(e1, v1);
        Cx e2 = e, v2 = v;
        c.apply(e2, v2);
        CHECK(std::abs(e1 - e2) < 1e-12 * (1.0 + std::abs(e2)));
        CHECK(std::abs(v1 - v2) < 1e-12 * (1.0 + std::abs(v2)));
    }
}

TEST_CASE("undamped flow conserves mode energy over 1000 steps") {
    double kappa = 3.0, dt = 0.01;
    Mat2 m = pair_func(Kernel::exp, 0.0, kappa, dt);
    Cx e(0.6, 0.1), b(-0.2, 0.9);
    double en0 = std::norm(e) + std::norm(b);
    for (int s = 0; s < 1000; ++s) m.apply(e, b);
    CHECK(std::abs(std::norm(e) + std::norm(b) - en0) < 1e-12 * en0);
}

TEST_CASE("zero mode: E decays exponentially, b constant") {
    Grid g(16, 2 * M_PI);
    PhysParams params;
    params.c = 2.0;
    params.sigma = 1.5;
    double dt = 0.05;
    MaxwellPropagator prop(g, params, dt);
    Field2 E(g);
    Field b(g);
    E.x.at_mode(0, 0) = Complex(1.0, 0);
    b.at_mode(0, 0) = Complex(0.5, 0);
    prop.flow(E, b);
    double rate = params.sigma * params.c * params.c;
    CHECK(std::abs(E.x.at_mode(0, 0) - std::exp(-rate * dt)) < 1e-14);
    CHECK(std::abs(b.at_mode(0, 0) - 0.5) < 1e-15);
}

TEST_CASE("mode propagator matches the fine-step RK4 oracle") {
    Rng rng(23);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        double alpha = 8.0 * u01(rng);
        double kappa = (i % 5 == 0) ? alpha / 2.0 + (u01(rng) - 0.5) * 2e-6  // degenerate
                                    : 10.0 * u01(rng);
        double dt = 0.02 + 0.3 * u01(rng);
        CxVec y0{Cx(u01(rng), u01(rng)), Cx(u01(rng), u01(rng))};

        Mat2 m = pair_func(Kernel::exp, alpha, kappa, dt);
        Cx e = y0[0], b = y0[1];
        m.apply(e, b);
        CxVec fine = oracle::rk4(oracle::pair_rhs(alpha, kappa), y0, 0.0, dt, 10000);
        CHECK(oracle::rel_err({e, b}, fine) < 1e-8);
    }
}

TEST_CASE("phi1 Duhamel term matches RK4 with a constant source") {
    Rng rng(31);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        double alpha = 6.0 * u01(rng), kappa = 6.0 * u01(rng);
        double dt = 0.05 + 0.2 * u01(rng);
        Cx src(u01(rng), -u01(rng));
        CxVec y0{Cx(0.2, 0.1), Cx(-0.4, 0.3)};

        PairOps ops = pair_ops(alpha, kappa, dt);
        Cx e = y0[0], b = y0[1];
        ops.exp.apply(e, b);
        e += dt * ops.p1.m11 * src;
        b += dt * ops.p1.m21 * src;

        std::function<Cx(double)> src_fn = [src](double) { return src; };
        CxVec fine = oracle::rk4(oracle::pair_rhs(alpha, kappa, src_fn), y0, 0.0, dt, 10000);
        CHECK(oracle::rel_err({e, b}, fine) < 1e-8);
    }
}

TEST_CASE("ETD2 order for a time-dependent source") {
    // Global error against RK4 at Delta t / 10^4 falls like dt^2.
    double alpha = 4.0, kappa = 2.5, T = 1.0;
    std::function<Cx(double)> src = [](double t) {
        return Cx(std::sin(3.0 * t), std::cos(2.0 * t));
    };
    CxVec y0{Cx(0.5, -0.2), Cx(0.1, 0.4)};
    CxVec ref = oracle::rk4(oracle::pair_rhs(alpha, kappa, src), y0, 0.0, T, 200000);

    std::vector<double> dts, errs;
    for (int nsteps : {16, 32, 64, 128, 256}) {
        double dt = T / nsteps;
        PairOps ops = pair_ops(alpha, kappa, dt);
        Cx e = y0[0], b = y0[1];
        for (int s = 0; s < nsteps; ++s) {
            Cx g0 = src(s * dt), g1 = src((s + 1) * dt);
            ops.exp.apply(e, b);
            e += dt * ops.p1.m11 * g0;
            b += dt * ops.p1.m21 * g0;
            e += dt * ops.p2.m11 * (g1 - g0);
            b += dt * ops.p2.m21 * (g1 - g0);
        }
        dts.push_back(dt);
        errs.push_back(oracle::rel_err({e, b}, ref));
    }
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < dts.size(); ++i) {
        lx.push_back(std::log(dts[i]));
        ly.push_back(std::log(errs[i]));
    }
    LinearFit fit = fit_line(lx, ly);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("damped maxwell energy balance with Gauss-Legendre dissipation") {
    // Delta(|e|^2 + |b|^2) = -2 sigma c^2 int |e_sol|^2 per mode, accumulated
    // over 1000 steps of the exact flow.
    double sigma = 0.8, c = 3.0, kappa_xi = 2.0;
    double ac = sigma * c * c, kap = c * kappa_xi, dt = 0.005;
    Mat2 m = pair_func(Kernel::exp, ac, kap, dt);
    const double gl_nodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
    const double gl_weights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};
    Cx e(0.7, -0.1), b(0.2, 0.5);
    double en0 = std::norm(e) + std::norm(b);
    double dissipated = 0;
    for (int s = 0; s < 1000; ++s) {
        for (int n = 0; n < 8; ++n) {
            double tau = 0.5 * dt * (gl_nodes[n] + 1.0);
            Cx et = e, bt = b;
            pair_func(Kernel::exp, ac, kap, tau).apply(et, bt);
            dissipated += 0.5 * dt * gl_weights[n] * 2.0 * ac * std::norm(et);
        }
        m.apply(e, b);
    }
    double en1 = std::norm(e) + std::norm(b);
    CHECK(std::abs(en1 - en0 + dissipated) < 1e-10 * en0);
}

TEST_CASE("shell decay rates of the damped Maxwell flow") {
    Grid g(64, 2 * M_PI);
    // High-frequency shell 2^j >> sigma c: envelope e^{-sigma c^2 t / 2}.
    {
        PhysParams params;
        params.sigma = 1.0;
        params.c = 2.0;  // sigma c = 2, shell j = 4 -> |xi| ~ 16
        Rng rng(3);
        Field b0 = shell_field(g, rng, 4);
        Field ex = shell_field(g, rng, 4), ey = shell_field(g, rng, 4);
        Field2 E0 = leray_project(Field2(ex, ey));
        std::vector<double> ts, en;
        for (double t : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
            Field2 E = E0;
            Field b = b0;
            if (t > 0) maxwell_flow_at(g, params, t, E, b);
            ts.push_back(t);
            double e2 = E.l2_spectral(), b2 = b.l2_spectral();
            en.push_back(std::log(std::sqrt(e2 * e2 + b2 * b2)));
        }
        LinearFit fit = fit_line(ts, en);
        double want = -params.sigma * params.c * params.c / 2.0;
        CHECK(std::abs(fit.slope - want) < 0.05 * std::abs(want));
    }
    // Low-frequency ring |xi| << sigma c: b decays at rate |xi|^2 / sigma.
    {
        PhysParams params;
        params.sigma = 1.0;
        params.c = 40.0;  // sigma c = 40 >> |xi| = 2
        Rng rng(5);
        Field b0 = ring_field(g, rng, 2);
        std::vector<double> ts, bn;
        for (double t : {0.0, 0.05, 0.1, 0.15, 0.2}) {
            Field2 E(g);
            Field b = b0;
            if (t > 0) maxwell_flow_at(g, params, t, E, b);
            ts.push_back(t);
            bn.push_back(std::log(b.l2_spectral()));
        }
        LinearFit fit = fit_line(ts, bn);
        double want = -4.0 / params.sigma;  // |xi|^2 / sigma at |xi| = 2
        CHECK(std::abs(fit.slope - want) < 0.10 * std::abs(want));
    }
}

TEST_CASE("scalar propagators") {
    Grid g(32, 2 * M_PI);
    Rng rng(8);
    Field f = shell_field(g, rng, 3);

    // alpha = 0 Schrodinger: modulus of every mode constant in time.
    ScalarFlow schro(g, ScalarKind::schrodinger, 0.0);
    Field ft = schro.state_at(f, 0.37);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            CHECK(std::abs(std::abs(ft.spec(ix, iy)) - std::abs(f.spec(ix, iy))) < 1e-13);

    // Wave with alpha = 0: discrete energy ||du/dt||^2 + ||grad u||^2 conserved.
    ScalarFlow wave(g, ScalarKind::wave, 0.0);
    Field gvel = shell_field(g, rng, 3);
    Field e0, b0;
    wave.wave_pair_at(f, gvel, 0.0, e0, b0);
    double en0 = std::pow(e0.l2_spectral(), 2) + std::pow(b0.l2_spectral(), 2);
    Field e1, b1;
    wave.wave_pair_at(f, gvel, 2.5, e1, b1);
    double en1 = std::pow(e1.l2_spectral(), 2) + std::pow(b1.l2_spectral(), 2);
    CHECK(std::abs(en1 - en0) < 1e-10 * en0);

    // Degenerate wave mode alpha = 2, |xi| = 1, g = 0: u(t) = (1 + t) e^{-t} f.
    Field single(g);
    single.at_mode(1, 0) = Complex(0.5, 0);
    single.at_mode(-1, 0) = Complex(0.5, 0);
    ScalarTrajectory traj =
        scalar_propagator(ScalarKind::wave, 2.0, single, Field(g), nullptr, 1.0, 0.01);
    double t = traj.times.back();
    Complex got = traj.u.back().at_mode(1, 0);
    Complex want = (1.0 + t) * std::exp(-t) * single.at_mode(1, 0);
    CHECK(std::abs(got - want) < 1e-8);

    // Against RK4 on the pair at the double root.
    CxVec y0{Cx(0, 0), Cx(0, 0.5)};  // (e, b) = (g, i|xi|f) at mode (1, 0)
    CxVec fine = oracle::rk4(oracle::pair_rhs(2.0, 1.0), y0, 0.0, 1.0, 10000);
    Complex bgot = traj.u.back().at_mode(1, 0) * Complex(0, 1.0);  // b = i |xi| u
    CHECK(std::abs(bgot - fine[1]) < 1e-8);

    // dt must divide t_end.
    CHECK_THROWS_AS(
        scalar_propagator(ScalarKind::wave, 0.0, single, Field(g), nullptr, 1.0, 0.3),
        std::invalid_argument);
}
