#include "emlab/initial_data.hpp"

#include <cmath>

#include "emlab/littlewood_paley.hpp"

namespace emlab {

namespace {

// Fills a real field by assigning each mode envelope(|xi|) * unit random
// phase, Hermitian-symmetrized. Iteration order is fixed, so a given seed
// yields the same field regardless of thread count.
Field random_envelope_field(const Grid& g, Rng& rng,
                            const std::function<double(double)>& envelope, int radius) {
    Field f(g);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int ix = 0; ix < g.n; ++ix) {
        int kx = g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            int ky = g.mode(iy);
            double re = gauss(rng), im = gauss(rng);  // always draw: seed-stable layout
            if (kx == 0 && ky == 0) continue;
            if (std::abs(kx) > radius || std::abs(ky) > radius) continue;
            double xi = g.dk() * std::hypot(static_cast<double>(kx), static_cast<double>(ky));
            double env = envelope(xi);
            f.spec(ix, iy) = env * Complex(re, im) * M_SQRT1_2;
        }
    }
    f.make_hermitian();
    f.zero_mean();
    return f;
}

}  // namespace

Field random_smooth_field(const Grid& g, Rng& rng, double a, double xi0, int radius) {
    return random_envelope_field(
        g, rng,
        [&](double xi) { return std::pow(xi, -a) * std::exp(-xi * xi / (xi0 * xi0)); }, radius);
}

Field shell_field(const Grid& g, Rng& rng, int shell_j) {
    return random_envelope_field(
        g, rng,
        [&](double xi) { return LittlewoodPaley::phi_profile(std::pow(2.0, -shell_j) * xi); },
        g.n / 2 - 1);
}

Field ring_field(const Grid& g, Rng& rng, int ring_k) {
    // Exact integer lattice radius only (|k| = ring_k), so every retained
    // mode shares one |xi| magnitude.
    return random_envelope_field(
        g, rng,
        [&](double xi) {
            double r = xi / g.dk();
            return std::abs(r - ring_k) < 0.1 ? 1.0 : 0.0;
        },
        g.n / 2 - 1);
}

Field shell_packet(const Grid& g, int shell_j, double x0, double y0) {
    Field f(g);
    double scale = std::pow(2.0, -shell_j);
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            double env = LittlewoodPaley::phi_profile(scale * std::hypot(kx, ky));
            if (env == 0) continue;
            f.spec(ix, iy) = env * std::exp(Complex(0, -(kx * x0 + ky * y0)));
        }
    }
    f.make_hermitian();
    f.zero_mean();
    return f;
}

Field knapp_packet(const Grid& g, int shell_j, double theta, double x0, double y0) {
    if (!(theta > 0)) throw std::invalid_argument("knapp_packet: theta must be positive");
    Field f(g);
    double scale = std::pow(2.0, -shell_j);
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            double r = std::hypot(kx, ky);
            double env = LittlewoodPaley::phi_profile(scale * r);
            if (env == 0) continue;
            // Cap of angular half-width theta around +e1, plus the mirror cap
            // around -e1 holding the Hermitian partners.
            double a = std::abs(std::atan2(ky, kx));
            if (std::min(a, M_PI - a) > theta) continue;
            f.spec(ix, iy) = env * std::exp(Complex(0, -(kx * x0 + ky * y0)));
        }
    }
    f.make_hermitian();
    f.zero_mean();
    return f;
}

NormalEMState make_initial_data(const DataRecipe& recipe, const Grid& g,
                                const PhysParams& params) {
    params.validate();
    NormalEMState s(g);
    int radius = g.dealias_radius();
    if (params.cutoff_index >= 0) {
        double r = std::pow(2.0, params.cutoff_index) / g.dk();
        radius = std::min(radius, static_cast<int>(std::floor(r)));
    }

    if (recipe.name == "single-shell") {
        Rng rng(recipe.seed);
        s.omega = shell_field(g, rng, recipe.shell_j) * recipe.amplitude;
        Field ex = shell_field(g, rng, recipe.shell_j) * recipe.em_amplitude;
        Field ey = shell_field(g, rng, recipe.shell_j) * recipe.em_amplitude;
        s.E = leray_project(Field2(ex, ey));
        s.b = shell_field(g, rng, recipe.shell_j) * recipe.em_amplitude;
    } else if (recipe.name == "random-smooth") {
        Rng rng(recipe.seed);
        s.omega = random_smooth_field(g, rng, recipe.spectrum_a, recipe.xi0, radius) *
                  recipe.amplitude;
        Field ex = random_smooth_field(g, rng, recipe.spectrum_a, recipe.xi0, radius) *
                   recipe.em_amplitude;
        Field ey = random_smooth_field(g, rng, recipe.spectrum_a, recipe.xi0, radius) *
                   recipe.em_amplitude;
        s.E = leray_project(Field2(ex, ey));
        s.b = random_smooth_field(g, rng, recipe.spectrum_a, recipe.xi0, radius) *
              recipe.em_amplitude;
    } else if (recipe.name == "taylor-green") {
        // omega = 2 A sin x sin y (the cellular vortex), b = A_em cos x cos y,
        // E = 0; wavenumber 2*pi/L so one cell fills the box.
        double k0 = g.dk();
        std::vector<double> w(g.size()), bb(g.size());
        for (int i = 0; i < g.n; ++i) {
            double x = i * g.dx();
            for (int jy = 0; jy < g.n; ++jy) {
                double y = jy * g.dx();
                w[static_cast<std::size_t>(i) * g.n + jy] =
                    2.0 * recipe.amplitude * std::sin(k0 * x) * std::sin(k0 * y);
                bb[static_cast<std::size_t>(i) * g.n + jy] =
                    recipe.em_amplitude * std::cos(k0 * x) * std::cos(k0 * y);
            }
        }
        s.omega.from_physical(w);
        s.b.from_physical(bb);
    } else {
        throw std::invalid_argument("make_initial_data: unknown recipe '" + recipe.name + "'");
    }

    for (Field* f : {&s.omega, &s.E.x, &s.E.y, &s.b}) {
        f->truncate(radius);
        f->zero_mean();
    }
    s.E = leray_project(s.E);
    return s;
}

}  // namespace emlab
