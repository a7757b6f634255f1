// Command-line driver: maps experiment recipes onto library runs and emits
// manifest.json, CSV tables, summary.json, and spectral snapshots.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "emlab/config.hpp"
#include "emlab/estimates.hpp"
#include "emlab/initial_data.hpp"
#include "emlab/io.hpp"
#include "emlab/solver.hpp"
#include "emlab/util.hpp"

using namespace emlab;
using nlohmann::json;

namespace {

json fit_json(const DecayFit& fit, double predicted, double tol) {
    json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["residual"] = fit.residual;
    j["predicted"] = predicted;
    j["tolerance"] = tol;
    j["pass"] = std::abs(fit.slope - predicted) <= tol && fit.residual < 0.1;
    return j;
}

void write_summary(const std::string& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

int run_simulate(const ExperimentConfig& cfg) {
    Grid g(cfg.n, cfg.length);
    NormalEMState s0 = make_initial_data(cfg.recipe, g, cfg.phys());
    RunOptions opts;
    opts.dt = cfg.dt;
    opts.t_end = cfg.t_end;
    opts.snap_stride = cfg.snap_stride;

    Trajectory traj = run_euler_maxwell(s0, cfg.phys(), opts);
    bool blew_up = traj.blew_up;
    std::string diagnostic = traj.diagnostic;

    // Snapshots (last-good state retained even on blow-up).
    long step = 0;
    for (const auto& s : traj.snaps) {
        write_snapshot(snapshot_path(cfg.out_dir, "main", step), s, cfg.phys());
        step += cfg.snap_stride;
    }

    CsvWriter csv(cfg.out_dir + "/energy.csv",
                  {"time", "kinetic_l2sq", "electric_l2sq", "magnetic_l2sq", "current_l2",
                   "grad_b_inf", "omega_l2", "omega_l4"});
    const ScalarSeries& sr = traj.series;
    for (std::size_t i = 0; i < sr.times.size(); ++i)
        csv.row({sr.times[i], sr.kinetic[i], sr.electric[i], sr.magnetic[i], sr.j_l2[i],
                 sr.grad_b_inf[i], sr.omega_l2[i], sr.omega_lp[i]});

    json summary;
    summary["blow_up"] = blew_up;
    if (blew_up) summary["diagnostic"] = diagnostic;
    if (!sr.times.empty() && !blew_up) {
        EnergyReport rep = energy_report(traj, cfg.phys(), {});
        summary["E0"] = rep.e0;
        summary["balance_max_excess"] = rep.balance_max_excess;
        summary["dissipation_J"] = rep.dissipation_j;
        summary["dissipation_bound"] = std::sqrt(cfg.sigma / 2.0) * rep.e0;
        summary["H_total"] = rep.h_total;
        summary["H"] = {{"u_linf_h1", rep.u_linf_h1},
                        {"u_w1p_leg", rep.u_w1p_leg},
                        {"emb_linf_b74_high", rep.emb_linf_b74_high},
                        {"emb_l2_b74_high", rep.emb_l2_b74_high},
                        {"emb_l2_b1inf_high", rep.emb_l2_b1inf_high},
                        {"emb_linf_h1", rep.emb_linf_h1},
                        {"ce_l2_h1", rep.ce_l2_h1},
                        {"b_l2_b2_low", rep.b_l2_b2_low}};
        summary["vorticity_bound_excess"] = vorticity_bound_excess(traj);
        double div_e = 0, div_j = 0;
        for (const auto& s : traj.snaps) {
            div_e = std::max(div_e, divergence_sup_spectral(s.E));
            div_j = std::max(div_j, divergence_sup_spectral(ohm_current(s, cfg.phys())));
        }
        summary["max_div_E_spectral"] = div_e;
        summary["max_div_j_spectral"] = div_j;
    }
    write_summary(cfg.out_dir + "/summary.json", summary);
    return blew_up ? 2 : 0;
}

int run_sweep_c(const ExperimentConfig& cfg) {
    Grid g(cfg.n, cfg.length);
    NormalEMState s0 = make_initial_data(cfg.recipe, g, cfg.phys());
    RunOptions opts;
    opts.dt = cfg.dt;
    opts.t_end = cfg.t_end;
    opts.snap_stride = cfg.snap_stride;
    CSweepResult res = c_sweep(s0, cfg.sigma, cfg.c_list, opts);

    CsvWriter csv(cfg.out_dir + "/sweep.csv", {"c", "l2_diff_vs_mhd", "cE_l2_h1"});
    for (std::size_t i = 0; i < res.cs.size(); ++i)
        csv.row({res.cs[i], res.l2_diff[i], res.ce_l2h1[i]});

    bool monotone = true;
    for (std::size_t i = 0; i + 1 < res.l2_diff.size(); ++i)
        monotone = monotone && res.l2_diff[i + 1] < res.l2_diff[i];
    double cmax = *std::max_element(res.ce_l2h1.begin(), res.ce_l2h1.end());
    double cmin = *std::min_element(res.ce_l2h1.begin(), res.ce_l2h1.end());
    double mean = 0;
    for (double v : res.ce_l2h1) mean += v;
    mean /= res.ce_l2h1.size();

    json summary;
    summary["l2_diff_monotone_decreasing"] = monotone;
    summary["cE_l2h1_spread"] = mean > 0 ? (cmax - cmin) / mean : 0.0;
    write_summary(cfg.out_dir + "/summary.json", summary);
    return 0;
}

int run_strichartz(const ExperimentConfig& cfg) {
    Grid g(cfg.n, cfg.length);
    StrichartzSpec spec;
    spec.alpha = cfg.alpha;
    spec.q = cfg.q;
    spec.r = cfg.r;
    spec.horizon = cfg.t_end;
    spec.require_admissible();

    json summary;
    CsvWriter csv(cfg.out_dir + "/strichartz.csv", {"axis_value", "ratio", "axis"});
    if (cfg.alpha == 0.0) {
        FrequencyLawResult res =
            strichartz_frequency_law(g, spec, cfg.shells, 320, cfg.recipe.seed, cfg.threads);
        for (std::size_t i = 0; i < res.shells.size(); ++i)
            csv.row_mixed({format_double(res.shells[i]), format_double(res.ratios[i]), "j"});
        summary["frequency_law"] = fit_json(res.fit, res.predicted_slope, 0.08);
    } else {
        spec.shell_j = cfg.shells.empty() ? 5 : cfg.shells.front();
        std::vector<double> horizons, thetas;
        double t0 = 1.0 / (32.0 * cfg.alpha);
        for (int i = 0; i < 12; ++i) horizons.push_back(t0 * std::pow(2.0, i * 0.75));
        double thmin = std::pow(2.0, -spec.shell_j + 1);
        for (double th = thmin; th < 0.9; th *= std::sqrt(2.0)) thetas.push_back(th);
        CrossoverResult res = strichartz_damping_crossover(g, spec, horizons, thetas, 192,
                                                           cfg.recipe.seed, cfg.threads);
        for (std::size_t i = 0; i < res.horizons.size(); ++i)
            csv.row_mixed({format_double(res.horizons[i]), format_double(res.ratios[i]), "T"});
        summary["crossover_below"] = {{"slope", res.fit.below.slope},
                                      {"predicted", res.predicted_below},
                                      {"residual", res.fit.below.residual}};
        summary["crossover_above"] = {{"slope", res.fit.above.slope},
                                      {"predicted", res.predicted_above},
                                      {"residual", res.fit.above.residual}};
    }
    write_summary(cfg.out_dir + "/summary.json", summary);
    return 0;
}

int run_dispersion(const ExperimentConfig& cfg) {
    PsiSpec psi;
    std::vector<double> times;
    for (double t = 10.0; t <= 1000.0 * 1.0001; t *= std::pow(100.0, 1.0 / 6.0))
        times.push_back(t);
    DispersionDecayResult res = dispersion_decay(cfg.alpha, psi, times, {}, cfg.threads);

    CsvWriter csv(cfg.out_dir + "/dispersion.csv", {"t", "sup_abs_I"});
    for (std::size_t i = 0; i < res.times.size(); ++i) csv.row({res.times[i], res.sup_values[i]});

    json summary;
    // The -1/2 rate is sharp at alpha = 0; for alpha > 0 the integral decays
    // faster and the fit is reported against the envelope bound.
    summary["decay"] = fit_json(res.fit, -0.5, 0.05);
    double c_unif = 0;
    for (std::size_t i = 0; i < times.size(); ++i)
        c_unif = std::max(c_unif, res.sup_values[i] * std::sqrt(times[i]));
    summary["sup_I_sqrt_t"] = c_unif;
    summary["bound_satisfied"] = res.fit.slope <= -0.45;
    write_summary(cfg.out_dir + "/summary.json", summary);
    return 0;
}

int run_heat(const ExperimentConfig& cfg) {
    std::vector<int> ns{32, 64, 128};
    int nseeds = 50;
    CsvWriter csv(cfg.out_dir + "/heat.csv", {"n", "seed", "homogeneous_ratio", "maxreg_ratio"});
    json stability;
    std::vector<double> homog_max(ns.size(), 0.0), maxreg_max(ns.size(), 0.0);
    for (std::size_t gi = 0; gi < ns.size(); ++gi) {
        Grid g(ns[gi], cfg.length);
        std::vector<double> h(nseeds), m(nseeds);
        parallel_for(nseeds, cfg.threads, [&](std::size_t s) {
            h[s] = heat_homogeneous_ratio(g, cfg.recipe.seed + s, 0.0, 2.0, 2.0, cfg.alpha, 8.0);
            m[s] = heat_maxreg_ratio(g, cfg.recipe.seed + s, 0.0, 2.0, 2.0, 2.0, cfg.alpha, 4.0,
                                     48);
        });
        for (int s = 0; s < nseeds; ++s) {
            csv.row({static_cast<double>(ns[gi]), static_cast<double>(s), h[s], m[s]});
            homog_max[gi] = std::max(homog_max[gi], h[s]);
            maxreg_max[gi] = std::max(maxreg_max[gi], m[s]);
        }
    }
    auto spread = [](const std::vector<double>& v) {
        double lo = *std::min_element(v.begin(), v.end());
        double hi = *std::max_element(v.begin(), v.end());
        return (hi - lo) / (0.5 * (hi + lo));
    };
    stability["homogeneous_max_by_n"] = homog_max;
    stability["maxreg_max_by_n"] = maxreg_max;
    stability["homogeneous_spread"] = spread(homog_max);
    stability["maxreg_spread"] = spread(maxreg_max);
    write_summary(cfg.out_dir + "/summary.json", stability);
    return 0;
}

int run_besov_check(const ExperimentConfig& cfg) {
    Grid g(cfg.n, cfg.length);
    LittlewoodPaley lp(g);

    // Partition of unity over the lattice.
    double worst_pu = 0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy) {
            if (ix == 0 && iy == 0) continue;
            double sum = 0;
            for (int k = lp.k_min(); k <= lp.k_max(); ++k)
                sum += lp.phi_mult(k)[static_cast<std::size_t>(ix) * g.n + iy];
            worst_pu = std::max(worst_pu, std::abs(sum - 1.0));
        }

    // Bony reconstruction over random pairs.
    double worst_bony = 0;
    int pairs = 25;
    for (int i = 0; i < pairs; ++i) {
        Rng rng(cfg.recipe.seed + i);
        Field f = random_smooth_field(g, rng, 1.0, g.max_wavenumber() / 2, g.dealias_radius());
        Field h = random_smooth_field(g, rng, 1.5, g.max_wavenumber() / 2, g.dealias_radius());
        BonyDecomposition bd = paraproduct(f, h, lp);
        Field recon = bd.t_fg + bd.t_gf + bd.remainder;
        Field prod = multiply_raw(f, h);
        double rel = (recon - prod).l2_spectral() / prod.l2_spectral();
        worst_bony = std::max(worst_bony, rel);
    }

    // Product-law ratios at (s, t) = (0.5, 1.5) across seeds.
    std::vector<double> ratios;
    for (int i = 0; i < 25; ++i) {
        Rng rng(cfg.recipe.seed + 100 + i);
        Field om = random_smooth_field(g, rng, 1.0, g.max_wavenumber() / 2, g.dealias_radius());
        Field2 F = biot_savart(om);
        Field G = random_smooth_field(g, rng, 1.0, g.max_wavenumber() / 2, g.dealias_radius());
        ratios.push_back(product_law_report(F, G, 0.5, 1.5, lp).ratio);
    }
    double rmax = *std::max_element(ratios.begin(), ratios.end());

    json summary;
    summary["partition_of_unity_error"] = worst_pu;
    summary["bony_reconstruction_worst_rel"] = worst_bony;
    summary["product_law_max_ratio"] = rmax;
    write_summary(cfg.out_dir + "/summary.json", summary);

    CsvWriter csv(cfg.out_dir + "/besov.csv", {"seed", "product_law_ratio"});
    for (std::size_t i = 0; i < ratios.size(); ++i)
        csv.row({static_cast<double>(i), ratios[i]});
    return 0;
}

int run_energy_report(const ExperimentConfig& cfg) {
    // Rebuild a trajectory from stored snapshots of a previous simulate run.
    namespace fs = std::filesystem;
    std::string dir = cfg.out_dir + "/run-main";
    std::vector<std::pair<long, std::string>> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::string name = e.path().filename().string();
        if (name.rfind("snap-", 0) == 0)
            files.emplace_back(std::stol(name.substr(5)), e.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("energy-report: no snapshots in " + dir);

    Trajectory traj;
    PhysParams params;
    for (const auto& [step, path] : files) {
        NormalEMState s = read_snapshot(path, &params);
        traj.snaps.push_back(s);
        ScalarSeries& sr = traj.series;
        sr.times.push_back(s.time);
        Field2 u = biot_savart(s.omega);
        sr.kinetic.push_back(u.l2_spectral() * u.l2_spectral());
        sr.electric.push_back(s.E.l2_spectral() * s.E.l2_spectral());
        sr.magnetic.push_back(s.b.l2_spectral() * s.b.l2_spectral());
        sr.j_l2.push_back(ohm_current(s, params).l2_spectral());
        Field2 gb(ddx(s.b), ddy(s.b));
        sr.grad_b_inf.push_back(lp_norm(gb, inf));
        sr.omega_l2.push_back(lp_norm(s.omega, 2.0));
        sr.omega_lp.push_back(lp_norm(s.omega, 4.0));
    }
    EnergyReport rep = energy_report(traj, params, {});
    json summary;
    summary["E0"] = rep.e0;
    summary["balance_max_excess"] = rep.balance_max_excess;
    summary["dissipation_J"] = rep.dissipation_j;
    summary["H_total"] = rep.h_total;
    write_summary(cfg.out_dir + "/energy_report.json", summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"emlab: 2D plasma pseudospectral simulator and estimates lab"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;

    std::vector<std::string> kinds{"simulate",    "sweep-c",     "strichartz", "dispersion",
                                   "heat",        "besov-check", "energy-report"};
    for (const auto& k : kinds) {
        CLI::App* sub = app.add_subcommand(k, "run the " + k + " experiment");
        sub->add_option("--config", config_path, "path to key = value config file");
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--threads", threads, "worker threads (overrides config)");
        sub->add_option_function<std::uint64_t>(
            "--seed",
            [&](const std::uint64_t& v) {
                seed = v;
                seed_set = true;
            },
            "RNG seed (overrides config)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{}
                                                   : ExperimentConfig::from_file(config_path);
        cfg.kind = app.get_subcommands().front()->get_name();
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads > 0) cfg.threads = threads;
        if (seed_set) cfg.recipe.seed = seed;
        cfg.validate();
        ensure_dir(cfg.out_dir);

        auto t0 = std::chrono::steady_clock::now();
        int rc = 0;
        if (cfg.kind == "simulate") rc = run_simulate(cfg);
        else if (cfg.kind == "sweep-c") rc = run_sweep_c(cfg);
        else if (cfg.kind == "strichartz") rc = run_strichartz(cfg);
        else if (cfg.kind == "dispersion") rc = run_dispersion(cfg);
        else if (cfg.kind == "heat") rc = run_heat(cfg);
        else if (cfg.kind == "besov-check") rc = run_besov_check(cfg);
        else if (cfg.kind == "energy-report") rc = run_energy_report(cfg);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(cfg.out_dir + "/manifest.json", cfg, wall);
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
