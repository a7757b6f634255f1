#include "emlab/solver.hpp"

#include <cmath>

namespace emlab {

namespace {

// Spectral truncation used on every nonlinear term: 2/3 dealiasing always,
// plus the radial S_n cutoff |xi| <= 2^n when cutoff_index is set.
void apply_cutoff(Field& f, const PhysParams& params) {
    const Grid& g = f.grid();
    f.truncate(g.dealias_radius());
    if (params.cutoff_index >= 0) {
        double r = std::pow(2.0, params.cutoff_index);
        for (int ix = 0; ix < g.n; ++ix) {
            double kx = g.wavenumber(ix);
            for (int iy = 0; iy < g.n; ++iy) {
                double ky = g.wavenumber(iy);
                if (kx * kx + ky * ky > r * r) f.spec(ix, iy) = Complex(0, 0);
            }
        }
    }
    f.zero_mean();
}

void apply_cutoff(Field2& f, const PhysParams& params) {
    apply_cutoff(f.x, params);
    apply_cutoff(f.y, params);
}

// Ampere source G = -sigma P(u x B).
Field2 maxwell_source(const Field2& u, const Field& b, const PhysParams& params) {
    Field2 g = leray_project(cross_normal(u, b));
    g *= -params.sigma;
    apply_cutoff(g, params);
    return g;
}

double max_speed(const Field2& u) {
    return lp_norm(u, inf);
}

void check_nan(const Field& f, double time) {
    for (const auto& c : f.data())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw BlowUpDetected(time);
}

}  // namespace

Field2 ohm_current(const NormalEMState& state, const PhysParams& params) {
    params.validate();
    Field2 u = biot_savart(state.omega);
    Field2 uxb = leray_project(cross_normal(u, state.b));
    apply_cutoff(uxb, params);
    Field2 j = state.E * params.c + uxb;
    j *= params.sigma;
    return j;
}

Field rhs_vorticity(const NormalEMState& state, const PhysParams& params) {
    Field2 u = biot_savart(state.omega);
    Field2 j = ohm_current(state, params);
    Field rhs = grad_dot(u, state.omega) * (-1.0);
    rhs -= grad_dot(j, state.b);
    if (params.nu > 0) rhs += laplacian(state.omega) * params.nu;
    apply_cutoff(rhs, params);
    return rhs;
}

EMSolver::EMSolver(const Grid& g, const PhysParams& params, double dt)
    : grid_(g), params_(params), dt_(dt), prop_(g, params, dt) {
    params.validate();
}

NormalEMState EMSolver::step(const NormalEMState& s) const {
    require_same_grid(s.grid(), grid_, "EMSolver::step");
    Field2 u0 = biot_savart(s.omega);

    double umax = max_speed(u0);
    if (umax > 0) {
        double dt_max = 0.5 * grid_.dx() / umax;
        if (dt_ > dt_max) throw CflViolation(dt_, dt_max);
    }

    // Stage values at t_n.
    Field2 g0 = maxwell_source(u0, s.b, params_);
    Field2 j0 = s.E * (params_.sigma * params_.c) - g0;  // sigma c E + sigma P(u x B)
    Field r0 = grad_dot(u0, s.omega) * (-1.0);
    r0 -= grad_dot(j0, s.b);
    if (params_.nu > 0) r0 += laplacian(s.omega) * params_.nu;
    apply_cutoff(r0, params_);

    // Predictor: exact linear flow + ETD1 source for (E, b), Euler for omega.
    NormalEMState p(grid_);
    p.E = s.E;
    p.b = s.b;
    prop_.etd1(p.E, p.b, g0);
    p.omega = s.omega + r0 * dt_;
    apply_cutoff(p.omega, params_);
    p.time = s.time + dt_;

    // Stage values at the predicted endpoint.
    Field2 u1 = biot_savart(p.omega);
    Field2 g1 = maxwell_source(u1, p.b, params_);
    Field2 j1 = p.E * (params_.sigma * params_.c) - g1;
    Field r1 = grad_dot(u1, p.omega) * (-1.0);
    r1 -= grad_dot(j1, p.b);
    if (params_.nu > 0) r1 += laplacian(p.omega) * params_.nu;
    apply_cutoff(r1, params_);

    // Corrector.
    NormalEMState out(grid_);
    out.E = p.E;
    out.b = p.b;
    prop_.etd2_correct(out.E, out.b, g0, g1);
    out.omega = s.omega + (r0 + r1) * (0.5 * dt_);
    apply_cutoff(out.omega, params_);
    out.time = s.time + dt_;

    // Constraint hygiene: re-project E, drop means.
    out.E = leray_project(out.E);
    out.E.x.zero_mean();
    out.E.y.zero_mean();
    out.b.zero_mean();

    check_nan(out.omega, out.time);
    check_nan(out.E.x, out.time);
    check_nan(out.b, out.time);
    return out;
}

MhdSolver::MhdSolver(const Grid& g, double sigma, double dt)
    : grid_(g), sigma_(sigma), dt_(dt) {
    if (!(sigma > 0)) throw std::invalid_argument("MhdSolver: sigma must be > 0");
    heat_exp_.resize(g.size());
    heat_p1_.resize(g.size());
    heat_p2_.resize(g.size());
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            double z = -(kx * kx + ky * ky) / sigma * dt;
            std::size_t idx = static_cast<std::size_t>(ix) * g.n + iy;
            heat_exp_[idx] = std::exp(z);
            heat_p1_[idx] = std::real(phi1(Complex(z, 0)));
            heat_p2_[idx] = std::real(phi2(Complex(z, 0)));
        }
    }
}

void MhdSolver::step(Field& omega, Field& b) const {
    require_same_grid(omega.grid(), grid_, "MhdSolver::step");
    PhysParams dealias_only;  // only the 2/3 truncation applies here
    dealias_only.sigma = sigma_;

    Field2 u0 = biot_savart(omega);
    double umax = max_speed(u0);
    if (umax > 0) {
        double dt_max = 0.5 * grid_.dx() / umax;
        if (dt_ > dt_max) throw CflViolation(dt_, dt_max);
    }

    Field r0 = grad_dot(u0, omega) * (-1.0);
    apply_cutoff(r0, dealias_only);
    Field n0 = grad_dot(u0, b) * (-1.0);
    apply_cutoff(n0, dealias_only);

    // Predictor.
    Field omega_p = omega + r0 * dt_;
    apply_cutoff(omega_p, dealias_only);
    Field b_p(grid_);
    for (std::size_t i = 0; i < b.data().size(); ++i)
        b_p.data()[i] = heat_exp_[i] * b.data()[i] + dt_ * heat_p1_[i] * n0.data()[i];

    Field2 u1 = biot_savart(omega_p);
    Field r1 = grad_dot(u1, omega_p) * (-1.0);
    apply_cutoff(r1, dealias_only);
    Field n1 = grad_dot(u1, b_p) * (-1.0);
    apply_cutoff(n1, dealias_only);

    // Corrector.
    Field omega_new = omega + (r0 + r1) * (0.5 * dt_);
    apply_cutoff(omega_new, dealias_only);
    for (std::size_t i = 0; i < b.data().size(); ++i)
        b_p.data()[i] += dt_ * heat_p2_[i] * (n1.data()[i] - n0.data()[i]);
    b_p.zero_mean();

    check_nan(omega_new, 0);
    omega = omega_new;
    b = b_p;
}

namespace {

void record_series(ScalarSeries& out, double time, const NormalEMState& s,
                   const PhysParams& params, bool sup_norms) {
    out.times.push_back(time);
    Field2 u = biot_savart(s.omega);
    out.kinetic.push_back(u.l2_spectral() * u.l2_spectral());
    out.electric.push_back(s.E.l2_spectral() * s.E.l2_spectral());
    out.magnetic.push_back(s.b.l2_spectral() * s.b.l2_spectral());
    Field2 j = ohm_current(s, params);
    out.j_l2.push_back(j.l2_spectral());
    if (sup_norms) {
        Field2 gb(ddx(s.b), ddy(s.b));
        out.grad_b_inf.push_back(lp_norm(gb, inf));
    } else {
        out.grad_b_inf.push_back(0.0);
    }
    out.omega_l2.push_back(lp_norm(s.omega, 2.0));
    out.omega_lp.push_back(lp_norm(s.omega, 4.0));
}

}  // namespace

Trajectory run_euler_maxwell(const NormalEMState& initial, const PhysParams& params,
                             const RunOptions& opts) {
    long nsteps = std::lround(opts.t_end / opts.dt);
    if (std::abs(nsteps * opts.dt - opts.t_end) > 1e-9 * std::abs(opts.t_end))
        throw std::invalid_argument("run_euler_maxwell: dt must divide t_end");
    EMSolver solver(initial.grid(), params, opts.dt);
    Trajectory traj;
    NormalEMState s = initial;
    traj.snaps.push_back(s);
    record_series(traj.series, s.time, s, params, opts.track_sup_norms);
    for (long i = 0; i < nsteps; ++i) {
        try {
            s = solver.step(s);
        } catch (const BlowUpDetected& e) {
            // Keep everything up to the last good state; the caller decides
            // how to report (blow-up is an expected experimental outcome).
            if (traj.snaps.back().time < s.time) traj.snaps.push_back(s);
            traj.blew_up = true;
            traj.diagnostic = e.what();
            return traj;
        }
        record_series(traj.series, s.time, s, params, opts.track_sup_norms);
        if ((i + 1) % opts.snap_stride == 0 || i + 1 == nsteps) traj.snaps.push_back(s);
    }
    return traj;
}

Trajectory run_mhd(const Field& omega0, const Field& b0, double sigma, const RunOptions& opts) {
    long nsteps = std::lround(opts.t_end / opts.dt);
    if (std::abs(nsteps * opts.dt - opts.t_end) > 1e-9 * std::abs(opts.t_end))
        throw std::invalid_argument("run_mhd: dt must divide t_end");
    MhdSolver solver(omega0.grid(), sigma, opts.dt);
    PhysParams params;
    params.sigma = sigma;
    Trajectory traj;
    Field omega = omega0, b = b0;
    auto snap = [&](double time) {
        NormalEMState s(omega0.grid());
        s.omega = omega;
        s.b = b;
        s.time = time;
        return s;
    };
    traj.snaps.push_back(snap(0.0));
    record_series(traj.series, 0.0, traj.snaps.back(), params, opts.track_sup_norms);
    for (long i = 0; i < nsteps; ++i) {
        solver.step(omega, b);
        double t = (i + 1) * opts.dt;
        NormalEMState s = snap(t);
        record_series(traj.series, t, s, params, opts.track_sup_norms);
        if ((i + 1) % opts.snap_stride == 0 || i + 1 == nsteps) traj.snaps.push_back(s);
    }
    return traj;
}

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& y, std::size_t hi) {
    double s = 0;
    for (std::size_t i = 0; i + 1 <= hi && i + 1 < t.size(); ++i)
        s += 0.5 * (t[i + 1] - t[i]) * (y[i] + y[i + 1]);
    return s;
}

// Prefix integrals of a uniformly sampled series by composite Simpson
// (trapezoid closing odd prefixes). The dissipation ||j||^2 carries an
// initial Ohm-relaxation transient at rate sigma c^2; Simpson keeps its
// integral accurate at the step sizes the solver actually uses.
std::vector<double> simpson_prefix(const std::vector<double>& t, const std::vector<double>& y) {
    std::size_t n = t.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    bool uniform = true;
    double dt = t[1] - t[0];
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs((t[i + 1] - t[i]) - dt) > 1e-9 * std::max(1.0, dt)) uniform = false;
    if (!uniform) {
        for (std::size_t i = 1; i < n; ++i) out[i] = trapezoid(t, y, i);
        return out;
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (i >= 2 && i % 2 == 0)
            out[i] = out[i - 2] + dt / 3.0 * (y[i - 2] + 4.0 * y[i - 1] + y[i]);
        else
            out[i] = out[i - 1] + 0.5 * dt * (y[i - 1] + y[i]);
    }
    return out;
}

}  // namespace

EnergyReport energy_report(const Trajectory& traj, const PhysParams& params,
                           const std::vector<double>& partition) {
    if (traj.snaps.empty() || traj.series.times.empty())
        throw std::invalid_argument("energy_report: empty trajectory");
    const ScalarSeries& sr = traj.series;
    for (double t : partition) {
        bool found = false;
        for (std::size_t i = 0; i < traj.snaps.size() && !found; ++i)
            if (std::abs(traj.snaps[i].time - t) <= 1e-9 * std::max(1.0, std::abs(t))) found = true;
        if (!found)
            throw std::invalid_argument("energy_report: missing snapshot at partition point");
    }

    EnergyReport rep;
    rep.times = sr.times;
    rep.kinetic = sr.kinetic;
    rep.electric = sr.electric;
    rep.magnetic = sr.magnetic;
    rep.e0 = std::sqrt(sr.kinetic[0] + sr.electric[0] + sr.magnetic[0]);

    // Energy inequality excess and dissipation.
    std::vector<double> j2(sr.j_l2.size());
    for (std::size_t i = 0; i < j2.size(); ++i) j2[i] = sr.j_l2[i] * sr.j_l2[i];
    std::vector<double> j2int = simpson_prefix(sr.times, j2);
    double excess = -1e300;
    for (std::size_t i = 0; i < sr.times.size(); ++i) {
        // Sample on the Simpson-exact (even) prefixes plus the endpoint; odd
        // prefixes carry one trapezoid interval whose error is visible inside
        // the initial Ohm-relaxation transient.
        if (i % 2 != 0 && i + 1 != sr.times.size()) continue;
        double lhs = sr.kinetic[i] + sr.electric[i] + sr.magnetic[i] +
                     (2.0 / params.sigma) * j2int[i];
        excess = std::max(excess, lhs - rep.e0 * rep.e0);
    }
    rep.balance_max_excess = excess;
    rep.dissipation_j = std::sqrt(j2int.back());

    // Lebesgue legs of H from the scalar series.
    double p = rep.p;
    double u_h1 = 0, w1p = 0;
    for (std::size_t i = 0; i < sr.times.size(); ++i) {
        u_h1 = std::max(u_h1, sr.omega_l2[i]);  // ||grad u||_2 = ||omega||_2
        w1p = std::max(w1p, sr.omega_lp[i]);    // ||grad u||_p ~ ||omega||_p
    }
    rep.u_linf_h1 = u_h1;
    rep.u_w1p_leg = std::pow(rep.e0, (p - 2) / (2 * p - 2)) * std::pow(w1p, p / (2 * p - 2));

    // Frequency-split legs from snapshots.
    const Grid& g = traj.snaps.front().grid();
    LittlewoodPaley lp(g);
    double thr = params.sigma * params.c;

    TimeSeriesNorms eb2;   // (E, b) block L^2 series
    TimeSeriesNorms ebinf; // (E, b) block L^inf series
    TimeSeriesNorms b2;    // b block L^2 series
    std::vector<double> e_h1_series, eb_h1_series;
    std::vector<double> snap_times;
    for (const auto& s : traj.snaps) {
        std::vector<const Field*> eb{&s.E.x, &s.E.y, &s.b};
        std::vector<const Field*> bb{&s.b};
        eb2.append(s.time, eb, 2.0, lp);
        ebinf.append(s.time, eb, inf, lp);
        b2.append(s.time, bb, 2.0, lp);
        Field2 gex(ddx(s.E.x), ddy(s.E.x));
        Field2 gey(ddx(s.E.y), ddy(s.E.y));
        Field2 gb(ddx(s.b), ddy(s.b));
        double e_h1 = std::sqrt(std::pow(gex.l2_spectral(), 2) + std::pow(gey.l2_spectral(), 2));
        e_h1_series.push_back(e_h1);
        eb_h1_series.push_back(std::sqrt(e_h1 * e_h1 + std::pow(gb.l2_spectral(), 2)));
        snap_times.push_back(s.time);
    }

    NormSpec cl(7.0 / 4.0, 2.0, 1.0);
    cl.flavor = NormFlavor::chemin_lerner;
    cl.split = Split::above;
    cl.split_threshold = thr;
    cl.r = inf;
    rep.emb_linf_b74_high = std::pow(params.c, -0.75) * chemin_lerner_norm(eb2, cl);
    cl.r = 2.0;
    rep.emb_l2_b74_high = std::pow(params.c, 0.25) * chemin_lerner_norm(eb2, cl);

    NormSpec cl_inf(1.0, inf, 1.0);
    cl_inf.flavor = NormFlavor::chemin_lerner;
    cl_inf.split = Split::above;
    cl_inf.split_threshold = thr;
    cl_inf.r = 2.0;
    rep.emb_l2_b1inf_high = chemin_lerner_norm(ebinf, cl_inf);

    NormSpec b2low(2.0, 2.0, 1.0);
    b2low.flavor = NormFlavor::chemin_lerner;
    b2low.split = Split::below;
    b2low.split_threshold = thr;
    b2low.r = 2.0;
    rep.b_l2_b2_low = chemin_lerner_norm(b2, b2low);

    double ebh1 = 0;
    for (double v : eb_h1_series) ebh1 = std::max(ebh1, v);
    rep.emb_linf_h1 = ebh1;
    rep.ce_l2_h1 = params.c * time_lr_norm(snap_times, e_h1_series, 2.0);

    rep.h_total = rep.u_linf_h1 + rep.u_w1p_leg + rep.emb_linf_b74_high + rep.emb_l2_b74_high +
                  rep.emb_l2_b1inf_high + rep.emb_linf_h1 + rep.ce_l2_h1 + rep.b_l2_b2_low;
    return rep;
}

double vorticity_bound_excess(const Trajectory& traj) {
    const ScalarSeries& sr = traj.series;
    if (sr.times.empty()) throw std::invalid_argument("vorticity_bound_excess: empty series");
    std::vector<double> j2(sr.j_l2.size()), gb2(sr.grad_b_inf.size());
    for (std::size_t i = 0; i < j2.size(); ++i) {
        j2[i] = sr.j_l2[i] * sr.j_l2[i];
        gb2[i] = sr.grad_b_inf[i] * sr.grad_b_inf[i];
    }
    std::vector<double> j2int = simpson_prefix(sr.times, j2);
    std::vector<double> gb2int = simpson_prefix(sr.times, gb2);
    double worst = -1e300;
    for (std::size_t i = 0; i < sr.times.size(); ++i) {
        double bound = sr.omega_l2[0] + std::sqrt(j2int[i]) * std::sqrt(gb2int[i]);
        worst = std::max(worst, sr.omega_l2[i] - bound);
    }
    return worst;
}

}  // namespace emlab
