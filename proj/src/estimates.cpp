#include "emlab/estimates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "emlab/util.hpp"

namespace emlab {

// Fits are carried out in decades (log10 on both axes): the slope is the
// base-independent power-law exponent and the residual is in log units.
DecayFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_loglog: size mismatch");
    DecayFit out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) continue;
        out.abscissae.push_back(std::log10(x[i]));
        out.ordinates.push_back(std::log10(y[i]));
    }
    if (out.abscissae.size() < 4)
        throw std::invalid_argument("fit_loglog: need >= 4 positive samples");
    LinearFit lf = fit_line(out.abscissae, out.ordinates);
    out.slope = lf.slope;
    out.intercept = lf.intercept;
    out.residual = lf.residual;
    return out;
}

// ---------------------------------------------------------------------------
// Damping Lemma
// ---------------------------------------------------------------------------

namespace {

// int_a^b e^{-alpha |t - s|} ds in closed form.
double kernel_segment(double t, double a, double b, double alpha) {
    if (alpha == 0.0) return b - a;
    if (t <= a) return (std::exp(-alpha * (a - t)) - std::exp(-alpha * (b - t))) / alpha;
    if (t >= b) return (std::exp(-alpha * (t - b)) - std::exp(-alpha * (t - a))) / alpha;
    return (2.0 - std::exp(-alpha * (t - a)) - std::exp(-alpha * (b - t))) / alpha;
}

// ||Tf||_{L^q[0,T)} / ||f||_{L^p} for f piecewise-constant on the segments
// {(a_m, b_m, f_m)}; Tf evaluated in closed form on a graded t-grid that
// resolves the 1/alpha boundary layers.
double damping_ratio(const std::vector<std::array<double, 3>>& segs, double alpha, double T,
                     double q, double p, int npts) {
    double core = std::min(T, (alpha > 0 ? 6.0 / alpha : T));
    std::vector<double> ts;
    int n1 = (3 * npts) / 4, n2 = npts - n1;
    for (int i = 0; i <= n1; ++i) ts.push_back(core * i / n1);
    if (core < T)
        for (int i = 1; i <= n2; ++i) ts.push_back(core + (T - core) * i / n2);
    std::vector<double> tf(ts.size(), 0.0);
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (const auto& s : segs) tf[i] += s[2] * kernel_segment(ts[i], s[0], s[1], alpha);
    for (double& v : tf) v = std::abs(v);
    double lq = time_lr_norm(ts, tf, q);
    double lp;
    if (std::isinf(p)) {
        lp = 0;
        for (const auto& s : segs) lp = std::max(lp, std::abs(s[2]));
    } else {
        double acc = 0;
        for (const auto& s : segs) acc += std::pow(std::abs(s[2]), p) * (s[1] - s[0]);
        lp = std::pow(acc, 1.0 / p);
    }
    return lp > 0 ? lq / lp : 0.0;
}

}  // namespace

DampingLemmaResult damping_lemma_check(const DampingLemmaSpec& spec) {
    double beta = spec.beta();
    if (beta < 0) throw std::invalid_argument("damping_lemma_check: beta must be >= 0");
    int n = spec.quad_points;

    std::vector<double> alphas_all, horizons_all, ratios_all;
    Rng rng(12345);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (double alpha : spec.alphas) {
        for (double T : spec.horizons) {
            // Data family: the constant, the width-adapted indicator (the
            // sharp example saturating the envelope at alpha T >> 1), and a
            // couple of random piecewise-constant profiles.
            std::vector<std::vector<std::array<double, 3>>> family;
            family.push_back({{0.0, T, 1.0}});
            double w = std::min(T, alpha > 0 ? 1.0 / alpha : T);
            family.push_back({{0.0, w, 1.0}});
            for (int r = 0; r < 2; ++r) {
                std::vector<std::array<double, 3>> segs;
                int m = 16;
                for (int i = 0; i < m; ++i)
                    segs.push_back({T * i / m, T * (i + 1) / m, unif(rng)});
                family.push_back(std::move(segs));
            }
            double best = 0;
            for (const auto& segs : family)
                best = std::max(best, damping_ratio(segs, alpha, T, spec.q, spec.p, n));
            alphas_all.push_back(alpha);
            horizons_all.push_back(T);
            ratios_all.push_back(best);
        }
    }

    DampingLemmaResult res;
    res.beta_expected = beta;
    std::vector<double> gx, gy, sx, sy;
    for (std::size_t i = 0; i < ratios_all.size(); ++i) {
        double at = alphas_all[i] * horizons_all[i];
        double env = horizons_all[i] / (1.0 + at);
        if (at <= 0.3) {
            gx.push_back(horizons_all[i]);
            gy.push_back(ratios_all[i]);
        }
        if (at >= 30.0 && alphas_all[i] > 0) {
            sx.push_back(alphas_all[i]);
            sy.push_back(ratios_all[i]);
        }
        if (env > 0)
            res.envelope_constant =
                std::max(res.envelope_constant, ratios_all[i] / std::pow(env, beta));
    }
    if (gx.size() >= 4) res.growth_fit = fit_loglog(gx, gy);
    if (sx.size() >= 4) res.saturation_fit = fit_loglog(sx, sy);
    return res;
}

// ---------------------------------------------------------------------------
// Strichartz measurements
// ---------------------------------------------------------------------------

bool StrichartzSpec::admissible() const {
    double sg = dispersive_sigma();
    auto pair_ok = [&](double qq, double rr) {
        if (qq < 1 || rr < 2) return false;
        if (2.0 / qq + 2.0 * sg / rr < sg - 1e-12) return false;  // 2/q + 2 sigma/r >= sigma
        if (1.0 + 2.0 * sg / rr < sg - 1e-12) return false;
        if (sg == 1.0 && std::isinf(rr)) return false;  // (r, sigma) = (inf, 1) endpoint
        return true;
    };
    if (!pair_ok(q, r) || !pair_ok(qt, rt)) return false;
    if (1.0 / q + 1.0 / qt > 1.0 + 1e-12) return false;
    return true;
}

void StrichartzSpec::require_admissible() const {
    if (!admissible())
        throw std::invalid_argument("StrichartzSpec: exponent pair is not admissible");
}

namespace {

// Sample grid on [0, T]: quadratically graded toward t = 0 (where wave
// packets are still coherent and the L^q_t mass of high shells concentrates),
// with a uniform tail beyond the damping core ~4/alpha.
std::vector<double> sample_times(double T, double alpha, int samples) {
    std::vector<double> ts;
    double core = std::min(T, alpha > 0 ? 4.0 / alpha : T);
    int n1 = core < T ? (3 * samples) / 4 : samples;
    int n2 = samples - n1;
    for (int i = 0; i <= n1; ++i)
        ts.push_back(core * std::pow(double(i) / n1, 2.0));
    for (int i = 1; i <= n2; ++i) ts.push_back(core + (T - core) * i / n2);
    return ts;
}

struct ActiveMode {
    int ix, iy;
    double xi;
    Complex g;
};

std::vector<ActiveMode> active_modes(const Field& data) {
    const Grid& g = data.grid();
    std::vector<ActiveMode> out;
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const Complex& v = data.spec(ix, iy);
            if (v == Complex(0, 0)) continue;
            out.push_back({ix, iy, std::hypot(kx, g.wavenumber(iy)), v});
        }
    }
    return out;
}

// ||(e,b)(t)||_{L^r_x} for the wave pair evolved from (e,b)(0) = (data, 0).
// Sup norms are read off a zero-padded grid fine enough that the highest
// retained wavenumber advances less than ~0.6 rad per cell: high-shell
// packets have physical peaks narrower than the base grid spacing, which the
// lattice max would systematically under-read.
int sup_eval_size(const Grid& g, const std::vector<ActiveMode>& modes) {
    double ximax = 0;
    for (const auto& m : modes) ximax = std::max(ximax, m.xi);
    int need = static_cast<int>(std::ceil(ximax * g.length / 0.6));
    int n = g.n;
    while (n < need && n < 8 * g.n) n *= 2;
    return n;
}

double pair_lr_at(const Grid& g, const std::vector<ActiveMode>& modes, double alpha, double t,
                  double r, int eval_n) {
    bool sup = std::isinf(r);
    Grid eval_grid = sup ? Grid(eval_n, g.length) : g;
    Field e(eval_grid), b(eval_grid);
    for (const auto& m : modes) {
        Complex ev = m.g, bv(0, 0);
        pair_func(Kernel::exp, alpha, m.xi, t).apply(ev, bv);
        int kx = g.mode(m.ix), ky = g.mode(m.iy);
        e.at_mode(kx, ky) = ev;
        b.at_mode(kx, ky) = bv;
    }
    std::vector<double> pe = e.to_physical(), pb = b.to_physical();
    if (sup) {
        double mx = 0;
        for (std::size_t i = 0; i < pe.size(); ++i)
            mx = std::max(mx, pe[i] * pe[i] + pb[i] * pb[i]);
        return std::sqrt(mx);
    }
    double cell = eval_grid.dx() * eval_grid.dx(), s = 0;
    for (std::size_t i = 0; i < pe.size(); ++i)
        s += std::pow(std::sqrt(pe[i] * pe[i] + pb[i] * pb[i]), r);
    return std::pow(cell * s, 1.0 / r);
}

}  // namespace

double strichartz_ratio(const Field& data, double alpha, double q, double r, double horizon,
                        int samples, int threads) {
    const Grid& g = data.grid();
    std::vector<ActiveMode> modes = active_modes(data);
    if (modes.empty()) return 0.0;
    int eval_n = std::isinf(r) ? sup_eval_size(g, modes) : g.n;
    std::vector<double> ts = sample_times(horizon, alpha, samples);
    std::vector<double> vals(ts.size());
    parallel_for(ts.size(), threads,
                 [&](std::size_t i) { vals[i] = pair_lr_at(g, modes, alpha, ts[i], r, eval_n); });
    double lq = time_lr_norm(ts, vals, q);
    return lq / data.l2_spectral();
}

FrequencyLawResult strichartz_frequency_law(const Grid& g, const StrichartzSpec& spec,
                                            const std::vector<int>& shells, int samples,
                                            std::uint64_t seed, int threads) {
    spec.require_admissible();
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, g.length);
    double x0 = unif(rng), y0 = unif(rng);

    FrequencyLawResult out;
    out.predicted_slope = spec.j_exponent();
    std::vector<double> xs;
    for (int j : shells) {
        Field data = shell_packet(g, j, x0, y0);
        out.shells.push_back(j);
        out.ratios.push_back(
            strichartz_ratio(data, spec.alpha, spec.q, spec.r, spec.horizon, samples, threads));
        xs.push_back(std::pow(2.0, j));
    }
    out.fit = fit_loglog(xs, out.ratios);  // slope is the exponent of 2^j
    return out;
}

CrossoverResult strichartz_damping_crossover(const Grid& g, const StrichartzSpec& spec,
                                             const std::vector<double>& horizons,
                                             const std::vector<double>& thetas, int samples,
                                             std::uint64_t seed, int threads) {
    spec.require_admissible();
    if (!(spec.alpha > 0))
        throw std::invalid_argument("strichartz_damping_crossover: alpha must be positive");
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, g.length);
    double x0 = unif(rng), y0 = unif(rng);

    std::vector<Field> beams;
    beams.reserve(thetas.size());
    for (double th : thetas) beams.push_back(knapp_packet(g, spec.shell_j, th, x0, y0));

    CrossoverResult out;
    out.predicted_below = spec.t_exponent();
    out.predicted_above = 0.0;
    out.horizons = horizons;
    out.ratios.assign(horizons.size(), 0.0);
    out.best_theta.assign(horizons.size(), 0.0);

    // Evaluate each beam's norm series once on a master graded grid over the
    // longest horizon; every shorter horizon reuses the partial integral.
    double t_max = *std::max_element(horizons.begin(), horizons.end());
    std::vector<double> master_ts = sample_times(t_max, spec.alpha, samples);
    std::vector<std::vector<ActiveMode>> beam_modes;
    for (const auto& beam : beams) beam_modes.push_back(active_modes(beam));
    // Base-grid sup norms suffice here: the lattice-max bias is fixed per
    // shell and horizon-independent, so it cancels in the fitted T-slopes
    // (only cross-shell comparisons need the padded evaluation).
    std::vector<std::vector<double>> series(thetas.size(),
                                            std::vector<double>(master_ts.size(), 0.0));
    std::size_t total = thetas.size() * master_ts.size();
    parallel_for(total, threads, [&](std::size_t idx) {
        std::size_t ith = idx / master_ts.size(), i = idx % master_ts.size();
        series[ith][i] =
            pair_lr_at(g, beam_modes[ith], spec.alpha, master_ts[i], spec.r, g.n);
    });

    for (std::size_t it = 0; it < horizons.size(); ++it) {
        std::size_t hi = 0;
        while (hi + 1 < master_ts.size() && master_ts[hi + 1] <= horizons[it] * (1 + 1e-12)) ++hi;
        std::vector<double> ts(master_ts.begin(), master_ts.begin() + hi + 1);
        for (std::size_t ith = 0; ith < thetas.size(); ++ith) {
            std::vector<double> vals(series[ith].begin(), series[ith].begin() + hi + 1);
            double v = time_lr_norm(ts, vals, spec.q) / beams[ith].l2_spectral();
            if (v > out.ratios[it]) {
                out.ratios[it] = v;
                out.best_theta[it] = thetas[ith];
            }
        }
    }
    // Fit windows. Sub-knee growth: from T ~ 3 * 2^{-j} (the widest cap has
    // decohered and its annular tail settled; earlier horizons sit in a
    // uniform square-root regime) up to alpha T = 1/2 (before the knee bend).
    // Saturation: alpha T >= 2. The knee proper belongs to neither power law.
    double t_knapp = 3.0 * std::pow(2.0, -spec.shell_j);
    std::vector<double> bx, by, ax, ay;
    for (std::size_t it = 0; it < horizons.size(); ++it) {
        double T = horizons[it], aT = spec.alpha * T;
        if (!(out.ratios[it] > 0)) continue;
        if (T >= t_knapp * (1 - 1e-12) && aT <= 0.5 * (1 + 1e-12)) {
            bx.push_back(std::log10(T));
            by.push_back(std::log10(out.ratios[it]));
        }
        if (aT >= 2.0 * (1 - 1e-12)) {
            ax.push_back(std::log10(T));
            ay.push_back(std::log10(out.ratios[it]));
        }
    }
    out.fit.x_break = 1.0 / spec.alpha;
    out.fit.n_below = static_cast<int>(bx.size());
    out.fit.n_above = static_cast<int>(ax.size());
    if (bx.size() >= 2) out.fit.below = fit_line(bx, by);
    if (ax.size() >= 2) out.fit.above = fit_line(ax, ay);
    return out;
}

// ---------------------------------------------------------------------------
// Parabolic smoothing
// ---------------------------------------------------------------------------

namespace {

Field heat_data(const Grid& g, Rng& rng) {
    return random_smooth_field(g, rng, 1.0, 0.5 * g.max_wavenumber(), g.dealias_radius());
}

// Flat-spectrum random field (rough source for the maximal-regularity check).
Field random_flat_field(const Grid& g, Rng& rng) {
    Field f(g);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int radius = g.dealias_radius();
    for (int ix = 0; ix < g.n; ++ix) {
        int kx = g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            int ky = g.mode(iy);
            double re = gauss(rng), im = gauss(rng);
            if (kx == 0 && ky == 0) continue;
            if (std::abs(kx) > radius || std::abs(ky) > radius) continue;
            f.spec(ix, iy) = Complex(re, im) * M_SQRT1_2;
        }
    }
    f.make_hermitian();
    f.zero_mean();
    return f;
}

}  // namespace

double heat_homogeneous_ratio(const Grid& g, std::uint64_t seed, double s, double p, double q,
                              double alpha, double horizon) {
    Rng rng(seed);
    Field w0 = heat_data(g, rng);
    return heat_homogeneous_ratio_field(w0, s, p, q, alpha, horizon);
}

double heat_homogeneous_ratio_field(const Field& w0, double s, double p, double q, double alpha,
                                    double horizon) {
    const Grid& g = w0.grid();
    LittlewoodPaley lp(g);

    NormSpec rhs_spec(s, p, q);
    double rhs = besov_norm(w0, rhs_spec, lp);

    NormSpec lhs_space(s + 2.0 / q, p, 1.0);
    // Graded time grid resolving the t -> 0 smoothing singularity.
    int nt = p == 2.0 ? 320 : 80;
    std::vector<double> ts(nt + 1), vals(nt + 1);
    for (int i = 0; i <= nt; ++i) ts[i] = horizon * std::pow(double(i) / nt, 2.0);
    for (int i = 0; i <= nt; ++i) {
        Field w(g);
        for (int ix = 0; ix < g.n; ++ix) {
            double kx = g.wavenumber(ix);
            for (int iy = 0; iy < g.n; ++iy) {
                double ky = g.wavenumber(iy);
                w.spec(ix, iy) =
                    std::exp(-(alpha + kx * kx + ky * ky) * ts[i]) * w0.spec(ix, iy);
            }
        }
        vals[i] = besov_norm(w, lhs_space, lp);
    }
    // Deduplicate the repeated t = 0 node from the graded grid.
    std::vector<double> tt, vv;
    for (int i = 0; i <= nt; ++i) {
        if (!tt.empty() && ts[i] <= tt.back()) continue;
        tt.push_back(ts[i]);
        vv.push_back(vals[i]);
    }
    double lhs = time_lr_norm(tt, vv, q);
    return rhs > 0 ? lhs / rhs : 0.0;
}

namespace {

// Marches the inhomogeneous damped heat flow with a source that is
// piecewise-constant on nsub sub-intervals; returns per-boundary states.
std::vector<Field> heat_duhamel_march(const Grid& g, double alpha, double horizon, int nsub,
                                      const std::vector<Field>& sources) {
    double dt = horizon / nsub;
    Field u(g);
    std::vector<Field> states;
    states.push_back(u);
    for (int n = 0; n < nsub; ++n) {
        Field next(g);
        for (int ix = 0; ix < g.n; ++ix) {
            double kx = g.wavenumber(ix);
            for (int iy = 0; iy < g.n; ++iy) {
                double ky = g.wavenumber(iy);
                double a = alpha + kx * kx + ky * ky;
                double ez = std::exp(-a * dt);
                double p1 = std::real(phi1(Complex(-a * dt, 0)));
                next.spec(ix, iy) =
                    ez * u.spec(ix, iy) + dt * p1 * sources[n].spec(ix, iy);
            }
        }
        u = next;
        states.push_back(u);
    }
    return states;
}

}  // namespace

double heat_maxreg_ratio(const Grid& g, std::uint64_t seed, double s, double p, double q,
                         double r, double alpha, double horizon, int nsub) {
    Rng rng(seed);
    std::vector<Field> sources;
    sources.reserve(nsub);
    for (int n = 0; n < nsub; ++n) sources.push_back(random_flat_field(g, rng));

    LittlewoodPaley lp(g);
    std::vector<Field> states = heat_duhamel_march(g, alpha, horizon, nsub, sources);

    double dt = horizon / nsub;
    std::vector<double> ts(states.size());
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = i * dt;

    NormSpec lhs_spec(s + 2.0, p, q);
    std::vector<double> lhs_vals(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        lhs_vals[i] = besov_norm(states[i], lhs_spec, lp);
    double lhs = time_lr_norm(ts, lhs_vals, r);

    NormSpec src_spec(s, p, q);
    double rhs_acc = 0;
    bool rinf = std::isinf(r);
    double rhs = 0;
    for (int n = 0; n < nsub; ++n) {
        double v = besov_norm(sources[n], src_spec, lp);
        if (rinf)
            rhs = std::max(rhs, v);
        else
            rhs_acc += dt * std::pow(v, r);
    }
    if (!rinf) rhs = std::pow(rhs_acc, 1.0 / r);
    return rhs > 0 ? lhs / rhs : 0.0;
}

double heat_damped_source_ratio(const Grid& g, std::uint64_t seed, double s, double p, double m,
                                double r, double theta, double alpha, double horizon, int nsub) {
    Rng rng(seed);
    std::vector<Field> sources;
    sources.reserve(nsub);
    for (int n = 0; n < nsub; ++n) sources.push_back(random_flat_field(g, rng));

    LittlewoodPaley lp(g);
    std::vector<Field> states = heat_duhamel_march(g, alpha, horizon, nsub, sources);
    double dt = horizon / nsub;
    std::vector<double> ts(states.size());
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = i * dt;

    NormSpec lhs_spec(s + 2.0 * theta, p, 1.0);
    std::vector<double> lhs_vals(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        lhs_vals[i] = besov_norm(states[i], lhs_spec, lp);
    double lhs = time_lr_norm(ts, lhs_vals, m);

    NormSpec src_spec(s, p, inf);
    double rhs_acc = 0, rhs = 0;
    bool rinf = std::isinf(r);
    for (int n = 0; n < nsub; ++n) {
        double v = besov_norm(sources[n], src_spec, lp);
        if (rinf)
            rhs = std::max(rhs, v);
        else
            rhs_acc += dt * std::pow(v, r);
    }
    if (!rinf) rhs = std::pow(rhs_acc, 1.0 / r);

    double expo = 1.0 + 1.0 / m - 1.0 / r - theta;
    double envelope = std::pow(horizon / (1.0 + alpha * horizon), expo);
    return rhs > 0 ? lhs / (envelope * rhs) : 0.0;
}

// ---------------------------------------------------------------------------
// Oscillatory integral
// ---------------------------------------------------------------------------

double PsiSpec::eval(double r) const {
    auto step = [](double x) {
        if (x <= 0) return 0.0;
        if (x >= 1) return 1.0;
        double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
        return a / (a + b);
    };
    if (r <= inner || r >= outer) return 0.0;
    if (r < inner_hi) return step((r - inner) / (inner_hi - inner));
    if (r <= outer_lo) return 1.0;
    return 1.0 - step((r - outer_lo) / (outer - outer_lo));
}

namespace {

// 4-point Gauss-Legendre on [-1, 1].
const double kGlNode[4] = {-0.861136311594052575224, -0.339981043584856264803,
                           0.339981043584856264803, 0.861136311594052575224};
const double kGlWeight[4] = {0.347854845137453857373, 0.652145154862546142627,
                             0.652145154862546142627, 0.347854845137453857373};

struct PsiTable {
    double rmax, dr;
    std::vector<double> vals;
    PsiTable(const PsiSpec& psi, double rmax_, int n) : rmax(rmax_), dr(rmax_ / n), vals(n + 2) {
        for (int i = 0; i <= n + 1; ++i) vals[i] = psi.eval(i * dr);
    }
    double operator()(double r) const {
        if (r >= rmax) return 0.0;
        double u = r / dr;
        int i = static_cast<int>(u);
        double w = u - i;
        return vals[i] * (1 - w) + vals[i + 1] * w;
    }
};

Complex osc_quad(double t, double x1, double x2, double alpha, const PsiTable& psi, double R,
                 int panels) {
    double a2 = alpha * alpha / 4.0;
    double h = 2.0 * R / panels;
    double re = 0, im = 0;
    for (int px = 0; px < panels; ++px) {
        double cx = -R + (px + 0.5) * h;
        for (int nx = 0; nx < 4; ++nx) {
            double xi1 = cx + 0.5 * h * kGlNode[nx];
            double w1 = kGlWeight[nx];
            double phase1 = x1 * xi1;
            double xi1sq = xi1 * xi1;
            for (int py = 0; py < panels; ++py) {
                double cy = -R + (py + 0.5) * h;
                for (int ny = 0; ny < 4; ++ny) {
                    double xi2 = cy + 0.5 * h * kGlNode[ny];
                    double r2 = xi1sq + xi2 * xi2;
                    double pv = psi(std::sqrt(r2));
                    if (pv == 0.0) continue;
                    double delta = std::sqrt(r2 - a2);
                    double phase = phase1 + x2 * xi2 + t * delta;
                    double w = w1 * kGlWeight[ny] * pv;
                    re += w * std::cos(phase);
                    im += w * std::sin(phase);
                }
            }
        }
    }
    double scale = 0.25 * h * h;
    return Complex(re * scale, im * scale);
}

}  // namespace

QuadResult dispersion_integral(double t, double x1, double x2, double alpha, const PsiSpec& psi,
                               double tol, double tol_abs) {
    if (t < 0) throw std::invalid_argument("dispersion_integral: t must be >= 0");
    if (alpha < 0 || alpha > 0.5)
        throw std::invalid_argument("dispersion_integral: alpha must lie in [0, 1/2]");
    if (!(psi.inner > alpha / 2.0))
        throw std::invalid_argument("dispersion_integral: psi support must avoid |xi| <= alpha/2");
    double R = psi.outer;
    // Max phase gradient: |x| plus t sup |grad delta| (largest at the inner
    // support edge); four GL nodes per oscillation wavelength per panel.
    double gmax = psi.inner / std::sqrt(psi.inner * psi.inner - alpha * alpha / 4.0);
    double cycles = (t * gmax + std::hypot(x1, x2)) * (2.0 * R) / (2.0 * M_PI);
    // Floor of 24 panels so the bump transitions of psi are resolved even
    // when the phase is slow.
    int panels = 24 + static_cast<int>(std::ceil(cycles));

    PsiTable table(psi, R + 1e-9, 4096);
    Complex coarse = osc_quad(t, x1, x2, alpha, table, R, panels);
    Complex fine = osc_quad(t, x1, x2, alpha, table, R, (3 * panels) / 2);
    double err = std::abs(fine - coarse);
    if (err > std::max(tol * std::abs(fine), tol_abs))
        throw std::runtime_error("dispersion_integral: quadrature did not converge");
    return QuadResult{fine, err, panels};
}

DispersionDecayResult dispersion_decay(double alpha, const PsiSpec& psi,
                                       const std::vector<double>& times,
                                       const std::vector<double>& x_over_t, int threads) {
    std::vector<double> ms = x_over_t;
    if (ms.empty()) {
        // Stationary rays |x|/t = |grad delta|(xi) sweep [m_lo, m_hi] as xi
        // runs over the plateau of psi; sample that band densely plus margin.
        double a = alpha * alpha / 4.0;
        double m_lo = psi.outer_lo / std::sqrt(psi.outer_lo * psi.outer_lo - a);
        double m_hi = psi.inner_hi / std::sqrt(psi.inner_hi * psi.inner_hi - a);
        double lo = 0.97 * m_lo, hi = 1.05 * m_hi;
        int npts = 21;
        for (int i = 0; i < npts; ++i) ms.push_back(lo + (hi - lo) * i / (npts - 1));
    }
    DispersionDecayResult out;
    out.times = times;
    std::size_t total = times.size() * ms.size();
    std::vector<double> flat(total, 0.0);
    parallel_for(total, threads, [&](std::size_t idx) {
        std::size_t it = idx / ms.size(), im = idx % ms.size();
        // Absolute floor 1e-6: far-from-cone points sit orders of magnitude
        // below the sup and only need to be resolved to that scale.
        QuadResult q = dispersion_integral(times[it], ms[im] * times[it], 0.0, alpha, psi,
                                           1e-3, 1e-6);
        flat[idx] = std::abs(q.value);
    });
    out.sup_values.assign(times.size(), 0.0);
    for (std::size_t it = 0; it < times.size(); ++it)
        for (std::size_t im = 0; im < ms.size(); ++im)
            out.sup_values[it] = std::max(out.sup_values[it], flat[it * ms.size() + im]);
    out.fit = fit_loglog(times, out.sup_values);
    return out;
}

// ---------------------------------------------------------------------------
// Per-lemma inequality tables
// ---------------------------------------------------------------------------

namespace {

struct TrajNorms {
    double u_linf_x = 0;       // ||u||_{Linf_{t,x}}
    double u_linf_h1 = 0;      // ||u||_{Linf_t H^1} (via ||omega||_2)
    double u_linf_l2 = 0;
    double grad_b_l2_linf = 0;  // ||grad B||_{L^2_t Linf_x}
    double b_linf_l2 = 0;
    double grad_b_l2_l2 = 0;   // ||grad B||_{L^2_t L^2}
    double e_linf_h1 = 0, eb_linf_h1 = 0;
    double ce_l2_h1 = 0;
    double b_l2_h1 = 0;
    double e0_h1 = 0, b0_h1 = 0, b0_l2 = 0, eb0_h1 = 0;
    double eb0_b74 = 0;        // ||(E0,B0)||_{B^{7/4}_{2,1}}
    double b_cl2_b74 = 0;      // ||B||_{CL^2 B^{7/4}_{2,1}}
    double eb_cl2_b74_high = 0;
    double eb_clinf_b74_high = 0;
    double eb_cl2_b1inf_high = 0;
    double eb_clinf_b74 = 0;   // unsplit CL^inf B^{7/4}_{2,1}
    double e_cl2_b74 = 0;      // unsplit CL^2, E only
    double b_l2_b2_low = 0;
    double b_cl2_b74_high = 0;
    double b_l2_b1_21 = 0;     // ||B||_{L^2_t B^1_{2,1}}
};

TrajNorms gather_norms(const Trajectory& traj, const PhysParams& params) {
    TrajNorms n;
    const Grid& g = traj.snaps.front().grid();
    LittlewoodPaley lp(g);
    double thr = params.sigma * params.c;

    TimeSeriesNorms eb2, ebinf, b2;
    std::vector<double> ts, e_h1, b_h1, b_b1_21;
    for (const auto& s : traj.snaps) {
        std::vector<const Field*> eb{&s.E.x, &s.E.y, &s.b};
        std::vector<const Field*> bb{&s.b};
        eb2.append(s.time, eb, 2.0, lp);
        ebinf.append(s.time, eb, inf, lp);
        b2.append(s.time, bb, 2.0, lp);
        ts.push_back(s.time);

        Field2 u = biot_savart(s.omega);
        n.u_linf_x = std::max(n.u_linf_x, lp_norm(u, inf));
        n.u_linf_l2 = std::max(n.u_linf_l2, u.l2_spectral());
        n.u_linf_h1 = std::max(n.u_linf_h1, s.omega.l2_spectral());
        n.b_linf_l2 = std::max(n.b_linf_l2, s.b.l2_spectral());

        Field2 gex(ddx(s.E.x), ddy(s.E.x));
        Field2 gey(ddx(s.E.y), ddy(s.E.y));
        Field2 gb(ddx(s.b), ddy(s.b));
        double eh1 = std::sqrt(std::pow(gex.l2_spectral(), 2) + std::pow(gey.l2_spectral(), 2));
        double bh1 = gb.l2_spectral();
        e_h1.push_back(eh1);
        b_h1.push_back(bh1);
        n.e_linf_h1 = std::max(n.e_linf_h1, eh1);
        n.eb_linf_h1 = std::max(n.eb_linf_h1, std::hypot(eh1, bh1));

        NormSpec b121(1.0, 2.0, 1.0);
        b_b1_21.push_back(besov_norm(s.b, b121, lp));
    }
    n.grad_b_l2_linf = time_lr_norm(traj.series.times, traj.series.grad_b_inf, 2.0);
    n.ce_l2_h1 = params.c * time_lr_norm(ts, e_h1, 2.0);
    n.b_l2_h1 = time_lr_norm(ts, b_h1, 2.0);
    n.grad_b_l2_l2 = n.b_l2_h1;
    n.b_l2_b1_21 = time_lr_norm(ts, b_b1_21, 2.0);

    const NormalEMState& s0 = traj.snaps.front();
    Field2 ge0x(ddx(s0.E.x), ddy(s0.E.x));
    Field2 ge0y(ddx(s0.E.y), ddy(s0.E.y));
    Field2 gb0(ddx(s0.b), ddy(s0.b));
    n.e0_h1 = std::sqrt(std::pow(ge0x.l2_spectral(), 2) + std::pow(ge0y.l2_spectral(), 2));
    n.b0_h1 = gb0.l2_spectral();
    n.b0_l2 = s0.b.l2_spectral();
    n.eb0_h1 = std::hypot(n.e0_h1, n.b0_h1);
    std::vector<const Field*> eb0{&s0.E.x, &s0.E.y, &s0.b};
    NormSpec b74(1.75, 2.0, 1.0);
    n.eb0_b74 = besov_norm(eb0, b74, lp);

    auto cl = [&](double s_, double p_, double q_, double r_, Split sp) {
        NormSpec spec(s_, p_, q_);
        spec.flavor = NormFlavor::chemin_lerner;
        spec.r = r_;
        spec.split = sp;
        spec.split_threshold = thr;
        return spec;
    };
    n.b_cl2_b74 = chemin_lerner_norm(b2, cl(1.75, 2, 1, 2, Split::all));
    n.eb_cl2_b74_high = chemin_lerner_norm(eb2, cl(1.75, 2, 1, 2, Split::above));
    n.eb_clinf_b74_high = chemin_lerner_norm(eb2, cl(1.75, 2, 1, inf, Split::above));
    n.eb_clinf_b74 = chemin_lerner_norm(eb2, cl(1.75, 2, 1, inf, Split::all));
    n.eb_cl2_b1inf_high = chemin_lerner_norm(ebinf, cl(1.0, inf, 1, 2, Split::above));
    n.b_l2_b2_low = chemin_lerner_norm(b2, cl(2.0, 2, 1, 2, Split::below));
    n.b_cl2_b74_high = chemin_lerner_norm(b2, cl(1.75, 2, 1, 2, Split::above));

    TimeSeriesNorms e2;
    for (const auto& s : traj.snaps) {
        std::vector<const Field*> ee{&s.E.x, &s.E.y};
        e2.append(s.time, ee, 2.0, lp);
    }
    n.e_cl2_b74 = chemin_lerner_norm(e2, cl(1.75, 2, 1, 2, Split::all));
    return n;
}

}  // namespace

std::vector<InequalityRow> inequality_report(const std::string& lemma_id, const Trajectory& traj,
                                             const PhysParams& params) {
    if (traj.snaps.empty()) throw std::invalid_argument("inequality_report: empty trajectory");
    TrajNorms n = gather_norms(traj, params);
    double c = params.c;
    double u_alg = std::max(n.u_linf_x, n.u_linf_h1);  // ||u||_{Linf_{t,x} cap Linf_t H^1}

    std::vector<InequalityRow> rows;
    auto add = [&](const std::string& name, double lhs, double rhs) {
        rows.push_back({name, lhs, rhs, rhs > 0 ? lhs / rhs : 0.0});
    };

    bool all = lemma_id == "all";
    if (all || lemma_id == "high-freq") {
        double lhs = std::pow(c, -0.75) * n.eb_clinf_b74_high +
                     std::pow(c, 0.25) * n.eb_cl2_b74_high + n.eb_cl2_b1inf_high;
        double rhs = std::pow(c, -0.75) * n.eb0_b74 + std::pow(c, -0.75) * u_alg * n.b_cl2_b74;
        add("high-freq", lhs, rhs);
    }
    if (all || lemma_id == "low-freq") {
        double lhs = n.b_l2_b2_low;
        double rhs = n.eb0_h1 + u_alg * (n.b_l2_b2_low / c + std::pow(c, -0.75) * n.b_cl2_b74_high) +
                     std::pow(n.u_linf_l2, 0.5) * std::pow(n.u_linf_h1, 0.5) *
                         std::pow(n.b_l2_h1, 0.5) * std::pow(n.b_l2_b2_low, 0.5);
        add("low-freq", lhs, rhs);
    }
    if (all || lemma_id == "classical-energy") {
        double lhs = n.eb_linf_h1 + n.ce_l2_h1;
        double rhs = n.eb0_h1 + n.u_linf_l2 * n.grad_b_l2_linf;
        add("classical-energy", lhs, rhs);
    }
    if (all || lemma_id == "heat-energy") {
        double lhs = n.b_linf_l2 + n.grad_b_l2_l2;
        double rhs = n.b0_l2 + n.eb0_h1 / c + n.u_linf_l2 * n.grad_b_l2_linf / c;
        add("heat-energy", lhs, rhs);
    }
    if (all || lemma_id == "technical-energy") {
        double lhs = n.eb_clinf_b74 + c * n.e_cl2_b74;
        double rhs = n.eb0_b74 + u_alg * (n.b_l2_h1 + n.b_l2_b2_low + n.b_cl2_b74_high);
        add("technical-energy", lhs, rhs);
    }
    if (all || lemma_id == "nonlinear-energy") {
        EnergyReport er = energy_report(traj, params, {});
        double h0 = 0;  // the pointwise energy H(t) at t = 0
        const NormalEMState& s0 = traj.snaps.front();
        LittlewoodPaley lp(s0.grid());
        std::vector<const Field*> eb0{&s0.E.x, &s0.E.y, &s0.b};
        NormSpec b74(1.75, 2.0, 1.0);
        b74.split = Split::above;
        b74.split_threshold = params.sigma * params.c;
        double e0 = er.e0;
        double p = er.p;
        h0 = s0.omega.l2_spectral() +
             std::pow(e0, (p - 2) / (2 * p - 2)) * std::pow(lp_norm(s0.omega, p), p / (2 * p - 2)) +
             std::pow(c, -0.75) * besov_norm(eb0, b74, lp) + n.eb0_h1;
        double j = er.dissipation_j;
        double lhs = er.h_total;
        double rhs = (1.0 + e0) * h0 + (1.0 + e0) * std::pow(j, 1.0 / (p - 1.0)) * er.h_total +
                     (1.0 + e0 * e0) / c * er.h_total * er.h_total;
        add("nonlinear-energy", lhs, rhs);
    }
    if (rows.empty())
        throw std::invalid_argument("inequality_report: unknown lemma id '" + lemma_id + "'");
    return rows;
}

// ---------------------------------------------------------------------------
// Solver experiments
// ---------------------------------------------------------------------------

CSweepResult c_sweep(const NormalEMState& data, double sigma, const std::vector<double>& cs,
                     const RunOptions& opts) {
    const Grid& g = data.grid();
    Trajectory mhd = run_mhd(data.omega, data.b, sigma, opts);

    CSweepResult out;
    out.cs = cs;
    out.l2_diff.assign(cs.size(), 0.0);
    out.ce_l2h1.assign(cs.size(), 0.0);

    std::vector<Trajectory> runs(cs.size());
    parallel_for(cs.size(), 2, [&](std::size_t i) {
        PhysParams params;
        params.c = cs[i];
        params.sigma = sigma;
        runs[i] = run_euler_maxwell(data, params, opts);
    });

    for (std::size_t i = 0; i < cs.size(); ++i) {
        const Trajectory& em = runs[i];
        if (em.snaps.size() != mhd.snaps.size())
            throw std::logic_error("c_sweep: snapshot counts differ");
        std::vector<double> ts, d2, eh1;
        for (std::size_t k = 0; k < em.snaps.size(); ++k) {
            const auto& a = em.snaps[k];
            const auto& m = mhd.snaps[k];
            ts.push_back(a.time);
            // ||u_a - u_m||_2^2 from vorticities, plus ||b_a - b_m||_2^2.
            double du2 = 0;
            for (int ix = 0; ix < g.n; ++ix) {
                double kx = g.wavenumber(ix);
                for (int iy = 0; iy < g.n; ++iy) {
                    double ky = g.wavenumber(iy);
                    double k2 = kx * kx + ky * ky;
                    if (k2 == 0) continue;
                    du2 += std::norm(a.omega.spec(ix, iy) - m.omega.spec(ix, iy)) / k2;
                }
            }
            du2 *= g.length * g.length;
            Field db = a.b - m.b;
            double db2 = db.l2_spectral();
            d2.push_back(du2 + db2 * db2);
            Field2 gex(ddx(a.E.x), ddy(a.E.x));
            Field2 gey(ddx(a.E.y), ddy(a.E.y));
            eh1.push_back(
                std::sqrt(std::pow(gex.l2_spectral(), 2) + std::pow(gey.l2_spectral(), 2)));
        }
        // L^2 in time of the L^2_x differences (d2 already squared).
        double acc = 0;
        for (std::size_t k = 0; k + 1 < ts.size(); ++k)
            acc += 0.5 * (ts[k + 1] - ts[k]) * (d2[k] + d2[k + 1]);
        out.l2_diff[i] = std::sqrt(acc);
        out.ce_l2h1[i] = cs[i] * time_lr_norm(ts, eh1, 2.0);
    }
    return out;
}

double scaling_covariance_error(const NormalEMState& data, const PhysParams& params,
                                const RunOptions& opts, double lambda) {
    const Grid& g = data.grid();
    Trajectory base = run_euler_maxwell(data, params, opts);

    // lambda-rescaled problem: same mode indices on the torus of side
    // L/lambda; coefficients scale by lambda^2 (omega) and lambda (E, b);
    // speed of light lambda c; time contracts by lambda^2.
    Grid gr(g.n, g.length / lambda);
    NormalEMState resc(gr);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy) {
            resc.omega.spec(ix, iy) = lambda * lambda * data.omega.spec(ix, iy);
            resc.E.x.spec(ix, iy) = lambda * data.E.x.spec(ix, iy);
            resc.E.y.spec(ix, iy) = lambda * data.E.y.spec(ix, iy);
            resc.b.spec(ix, iy) = lambda * data.b.spec(ix, iy);
        }
    PhysParams pr = params;
    pr.c = lambda * params.c;
    RunOptions opts_r = opts;
    opts_r.dt = opts.dt / (lambda * lambda);
    opts_r.t_end = opts.t_end / (lambda * lambda);

    Trajectory rescaled = run_euler_maxwell(resc, pr, opts_r);
    if (base.snaps.size() != rescaled.snaps.size())
        throw std::logic_error("scaling_covariance_error: snapshot counts differ");

    double worst = 0;
    for (std::size_t k = 1; k < base.snaps.size(); ++k) {
        const auto& sb = base.snaps[k];
        const auto& sr = rescaled.snaps[k];
        auto rel = [&](const Field& fb, const Field& fr, double power) {
            // Same index lattice on both grids; compare raw coefficients.
            double scale = std::pow(lambda, power);
            double num = 0, den = 0;
            for (std::size_t i = 0; i < fr.data().size(); ++i) {
                Complex want = scale * fb.data()[i];
                num += std::norm(fr.data()[i] - want);
                den += std::norm(want);
            }
            return den > 0 ? std::sqrt(num / den) : 0.0;
        };
        worst = std::max({worst, rel(sb.omega, sr.omega, 2.0), rel(sb.E.x, sr.E.x, 1.0),
                          rel(sb.E.y, sr.E.y, 1.0), rel(sb.b, sr.b, 1.0)});
    }
    return worst;
}

}  // namespace emlab
