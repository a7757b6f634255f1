#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "emlab/estimates.hpp"
#include "emlab/initial_data.hpp"
#include "emlab/util.hpp"

using namespace emlab;

TEST_CASE("damping lemma: exact growth at alpha = 0 and fitted exponents") {
    // alpha = 0, f == 1: ratio is exactly T^beta.
    DampingLemmaSpec spec;
    spec.q = 2;
    spec.p = 2;  // beta = 1/2 + 1 - 1/2 = 1
    spec.alphas = {0.0};
    spec.horizons = {0.5, 1.0, 2.0, 4.0};
    DampingLemmaResult res = damping_lemma_check(spec);
    CHECK(res.beta_expected == doctest::Approx(1.0));
    CHECK(res.growth_fit.slope == doctest::Approx(1.0).epsilon(0.01));

    // Both asymptotic exponents of the envelope over T in [0.1, 100] at
    // alpha = 1 (plus an alpha sweep for the saturated side), within 5%.
    for (auto [qq, pp] : {std::pair{2.0, 2.0}, std::pair{4.0, 2.0}}) {
        DampingLemmaSpec damped;
        damped.q = qq;
        damped.p = pp;
        damped.alphas = {0.0, 1.0, 2.0, 4.0, 8.0};
        damped.horizons = {0.1, 0.316, 1.0, 3.16, 10.0, 31.6, 100.0};
        DampingLemmaResult dres = damping_lemma_check(damped);
        double beta = dres.beta_expected;
        CHECK(std::abs(dres.growth_fit.slope - beta) < 0.05 * beta);
        CHECK(std::abs(dres.saturation_fit.slope + beta) < 0.05 * beta);
        CHECK(dres.envelope_constant > 0);
        CHECK(dres.envelope_constant < 10.0);
    }

    // beta < 0 rejected.
    DampingLemmaSpec bad;
    bad.q = 2;
    bad.p = 2;
    bad.q0 = 2;
    bad.p0 = inf;  // beta = -1
    CHECK_THROWS_AS(damping_lemma_check(bad), std::invalid_argument);
}

TEST_CASE("strichartz admissibility guard") {
    StrichartzSpec ok;
    ok.q = 4;
    ok.r = inf;
    CHECK(ok.admissible());

    StrichartzSpec bad1;  // 2/q + 1/r < 1/2
    bad1.q = 5;
    bad1.r = inf;
    CHECK(!bad1.admissible());
    CHECK_THROWS_AS(bad1.require_admissible(), std::invalid_argument);

    StrichartzSpec bad2;  // dual-pair Hoelder violation
    bad2.q = 1.5;
    bad2.r = 2;
    bad2.qt = 1.5;
    bad2.rt = 2;
    CHECK(!bad2.admissible());
}

TEST_CASE("energy pair (q,r) = (inf,2): ratio is one") {
    Grid g(64, 2 * M_PI);
    Rng rng(3);
    Field data = shell_field(g, rng, 3);
    double ratio = strichartz_ratio(data, 0.7, inf, 2.0, 1.0, 64, 2);
    CHECK(ratio <= 1.0 + 1e-10);
    CHECK(ratio > 0.99);  // attained at t = 0
}

TEST_CASE("frequency law at reduced size") {
    Grid g(128, 2 * M_PI);
    StrichartzSpec spec;
    spec.q = 4;
    spec.r = inf;
    spec.alpha = 0;
    spec.horizon = 2.0;
    FrequencyLawResult res = strichartz_frequency_law(g, spec, {2, 3, 4, 5}, 256, 11, 2);
    CHECK(res.predicted_slope == doctest::Approx(0.75));
    CHECK(std::abs(res.fit.slope - 0.75) < 0.15);
    CHECK(res.fit.residual < 0.1);
}

TEST_CASE("heat smoothing ratios") {
    Grid g(32, 2 * M_PI);

    // Single plateau mode, q = inf: LHS sup sits at t = 0, ratio exactly 1.
    Field mode(g);
    mode.at_mode(8, 0) = Complex(0.5, 0);
    mode.at_mode(-8, 0) = Complex(0.5, 0);
    double r_inf = heat_homogeneous_ratio_field(mode, 0.0, 2.0, inf, 0.0, 4.0);
    CHECK(r_inf == doctest::Approx(1.0).epsilon(1e-10));

    // q = 2 against the closed form (quadrature-limited agreement).
    double xi2 = 64.0;
    double T = 4.0;
    double hand = std::pow((1.0 - std::exp(-2.0 * xi2 * T)) / (2.0 * xi2), 0.5) *
                  std::pow(2.0, 2.0 * 3 / 2.0) / std::pow(2.0, 0.0);  // 2^{k 2/q}, k = 3
    double r_2 = heat_homogeneous_ratio_field(mode, 0.0, 2.0, 2.0, 0.0, T);
    CHECK(r_2 == doctest::Approx(hand).epsilon(0.01));

    // Ensemble boundedness across seeds (alpha = 0, q = p = 2, s = 0).
    double worst = 0;
    for (int s = 0; s < 10; ++s)
        worst = std::max(worst, heat_homogeneous_ratio(g, 100 + s, 0.0, 2.0, 2.0, 0.0, 8.0));
    CHECK(worst < 5.0);
    CHECK(worst > 0.1);

    // Maximal regularity ratio bounded across seeds and sizes.
    std::vector<double> maxima;
    for (int n : {32, 64}) {
        Grid gg(n, 2 * M_PI);
        double m = 0;
        for (int s = 0; s < 8; ++s)
            m = std::max(m, heat_maxreg_ratio(gg, 200 + s, 0.0, 2.0, 2.0, 2.0, 0.0, 4.0, 48));
        maxima.push_back(m);
    }
    CHECK(std::abs(maxima[1] - maxima[0]) / (0.5 * (maxima[0] + maxima[1])) < 0.3);

    // Damped-source envelope ratio stays bounded as (alpha, T) vary.
    std::vector<double> ratios;
    for (double alpha : {0.5, 2.0, 8.0})
        for (double T2 : {1.0, 4.0})
            ratios.push_back(
                heat_damped_source_ratio(g, 7, 0.0, 2.0, 2.0, 2.0, 0.5, alpha, T2, 48));
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(hi / lo < 10.0);
}

TEST_CASE("dispersion integral basics") {
    PsiSpec psi;

    // t = 0: equals the radial integral 2 pi int psi(r) r dr, real positive.
    QuadResult q0 = dispersion_integral(0.0, 0.0, 0.0, 0.0, psi);
    int nr = 20000;
    double acc = 0, rmax = psi.outer;
    for (int i = 0; i < nr; ++i) {
        double r0 = rmax * i / nr, r1 = rmax * (i + 1) / nr;
        acc += 0.5 * (r0 * psi.eval(r0) + r1 * psi.eval(r1)) * (r1 - r0);
    }
    double radial = 2.0 * M_PI * acc;
    CHECK(std::abs(q0.value.imag()) < 1e-10);
    CHECK(q0.value.real() == doctest::Approx(radial).epsilon(1e-5));

    // alpha = 0: phase reduces to x.xi + t|xi|; check against an independent
    // polar-Bessel quadrature 2 pi int J0(|x| r) e^{i t r} psi(r) r dr.
    double t = 20.0, x = 15.0;
    QuadResult q1 = dispersion_integral(t, x, 0.0, 0.0, psi);
    Complex bessel(0, 0);
    for (int i = 0; i < nr; ++i) {
        double r0 = rmax * i / nr, r1 = rmax * (i + 1) / nr;
        auto f = [&](double rr) {
            return std::cyl_bessel_j(0.0, x * rr) * std::exp(Complex(0, t * rr)) * psi.eval(rr) *
                   rr;
        };
        bessel += 0.5 * (f(r0) + f(r1)) * (r1 - r0);
    }
    bessel *= 2.0 * M_PI;
    CHECK(std::abs(q1.value - bessel) < 1e-5 * std::abs(bessel));

    // Guards.
    CHECK_THROWS_AS(dispersion_integral(1.0, 0.0, 0.0, 0.7, psi), std::invalid_argument);
    PsiSpec low;
    low.inner = 0.2;
    CHECK_THROWS_AS(dispersion_integral(1.0, 0.0, 0.0, 0.5, low), std::invalid_argument);
}

TEST_CASE("inequality report") {
    Grid g(32, 2 * M_PI);
    PhysParams params;
    params.c = 8.0;
    params.sigma = 1.0;

    // Zero trajectory: every row is 0 / 0.
    RunOptions opts;
    opts.dt = 1e-3;
    opts.t_end = 0.05;
    opts.snap_stride = 10;
    Trajectory zero = run_euler_maxwell(NormalEMState(g), params, opts);
    for (const auto& row : inequality_report("all", zero, params)) {
        CHECK(row.lhs == 0.0);
        CHECK(row.rhs == 0.0);
    }
    CHECK_THROWS_AS(inequality_report("nope", zero, params), std::invalid_argument);

    // Linear runs (u == 0): heat-energy ratio finite and stable in c.
    std::vector<double> ratios;
    for (double c : {8.0, 16.0}) {
        PhysParams pc = params;
        pc.c = c;
        NormalEMState s(g);
        Rng rng(31);
        Field ex = random_smooth_field(g, rng, 2.0, 3.0, g.dealias_radius()) * 0.1;
        Field ey = random_smooth_field(g, rng, 2.0, 3.0, g.dealias_radius()) * 0.1;
        Field bb = random_smooth_field(g, rng, 2.0, 3.0, g.dealias_radius()) * 0.1;
        s.E = leray_project(Field2(ex, ey));
        s.b = bb;
        Trajectory traj = run_euler_maxwell(s, pc, opts);
        for (const auto& row : inequality_report("heat-energy", traj, pc)) {
            CHECK(row.ratio > 0);
            CHECK(row.ratio < 10.0);
            ratios.push_back(row.ratio);
        }
    }
    CHECK(std::abs(ratios[1] - ratios[0]) / ratios[0] < 0.3);
}

TEST_CASE("c sweep is monotone on a tiny case") {
    Grid g(32, 2 * M_PI);
    DataRecipe r;
    r.name = "random-smooth";
    r.seed = 5;
    r.amplitude = 0.2;
    r.em_amplitude = 0.2;
    r.spectrum_a = 2.0;
    r.xi0 = 3.0;
    PhysParams params;
    params.c = 4.0;
    params.sigma = 1.0;
    NormalEMState data = make_initial_data(r, g, params);
    data.E = Field2(g);  // start from the quasi-static state
    RunOptions opts;
    opts.dt = 2e-3;
    opts.t_end = 0.3;
    opts.snap_stride = 15;
    CSweepResult res = c_sweep(data, 1.0, {4.0, 8.0, 16.0}, opts);
    CHECK(res.l2_diff[1] < res.l2_diff[0]);
    CHECK(res.l2_diff[2] < res.l2_diff[1]);
    for (double v : res.ce_l2h1) CHECK(v > 0);
}
