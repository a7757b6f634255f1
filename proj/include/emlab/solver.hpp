#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emlab/field.hpp"
#include "emlab/littlewood_paley.hpp"
#include "emlab/params.hpp"
#include "emlab/propagator.hpp"
#include "emlab/spectral_ops.hpp"

namespace emlab {

// State of the 2D plasma in vorticity form under the normal structure
// u = (u1, u2, 0), E = (E1, E2, 0), B = (0, 0, b); the suppressed components
// are identically zero by representation.
struct NormalEMState {
    Field omega;
    Field2 E;
    Field b;
    double time = 0;

    NormalEMState() = default;
    NormalEMState(const Grid& g) : omega(g), E(g), b(g) {}

    const Grid& grid() const { return omega.grid(); }
};

struct CflViolation : std::runtime_error {
    double dt, dt_max;
    CflViolation(double dt_, double dt_max_)
        : std::runtime_error("CFL violation: dt = " + std::to_string(dt_) +
                             " exceeds 0.5 dx / max|u| = " + std::to_string(dt_max_)),
          dt(dt_), dt_max(dt_max_) {}
};

struct BlowUpDetected : std::runtime_error {
    double time;
    explicit BlowUpDetected(double t)
        : std::runtime_error("numerical blow-up (NaN) detected at t = " + std::to_string(t)),
          time(t) {}
};

// Ohm's law j = sigma (c E + P(u x B)); divergence-free by construction.
Field2 ohm_current(const NormalEMState& state, const PhysParams& params);

// Vorticity tendency -u.grad omega - j.grad b + nu Lap omega, dealiased and
// truncated by the cutoff when one is set.
Field rhs_vorticity(const NormalEMState& state, const PhysParams& params);

// One coupled step: exact damped-Maxwell flow with ETD2RK source for (E, b),
// Heun (RK2) for omega. Throws CflViolation / BlowUpDetected.
class EMSolver {
  public:
    EMSolver(const Grid& g, const PhysParams& params, double dt);

    NormalEMState step(const NormalEMState& s) const;

    double dt() const { return dt_; }
    const PhysParams& params() const { return params_; }

  private:
    Grid grid_;
    PhysParams params_;
    double dt_;
    MaxwellPropagator prop_;
};

// One step of the limiting magnetohydrodynamic system: 2D Euler transport for
// omega (Heun) and the heat-transport equation
// db/dt - (1/sigma) Lap b + u.grad b = 0 (ETD2RK with exact heat factor).
class MhdSolver {
  public:
    MhdSolver(const Grid& g, double sigma, double dt);

    void step(Field& omega, Field& b) const;

    double dt() const { return dt_; }

  private:
    Grid grid_;
    double sigma_, dt_;
    std::vector<double> heat_exp_, heat_p1_, heat_p2_;
};

// Scalar diagnostics accumulated every step (cheap), independent of the full
// field snapshot cadence.
struct ScalarSeries {
    std::vector<double> times;
    std::vector<double> kinetic;     // ||u||_2^2
    std::vector<double> electric;    // ||E||_2^2
    std::vector<double> magnetic;    // ||b||_2^2
    std::vector<double> j_l2;        // ||j||_2
    std::vector<double> grad_b_inf;  // ||grad b||_inf
    std::vector<double> omega_l2;
    std::vector<double> omega_lp;    // p = 4
};

struct Trajectory {
    std::vector<NormalEMState> snaps;  // full states, every snap_stride steps
    ScalarSeries series;
    bool blew_up = false;      // run ended early on NaN; last-good state retained
    std::string diagnostic;
};

struct RunOptions {
    double dt = 1e-3;
    double t_end = 1.0;
    int snap_stride = 1;       // full snapshot every this many steps
    bool track_sup_norms = true;  // grad_b_inf costs two transforms per step
};

Trajectory run_euler_maxwell(const NormalEMState& initial, const PhysParams& params,
                             const RunOptions& opts);
// MHD run reported in the same containers (E left zero).
Trajectory run_mhd(const Field& omega0, const Field& b0, double sigma, const RunOptions& opts);

// Energy bookkeeping of the run: initial energy, balance excess over the
// energy inequality, the dissipation J(t1,t2) = ||j||_{L^2_{t,x}}, and the
// components of the nonlinear energy functional H(t1,t2) (Lebesgue legs from
// the scalar series, frequency-split Chemin-Lerner legs from snapshots).
struct EnergyReport {
    double e0 = 0;                  // ||(u,E,B)(t1)||_2
    double balance_max_excess = 0;  // max_t [ ||.||^2 + (2/sigma) int ||j||^2 - e0^2 ]
    double dissipation_j = 0;
    // H(t1,t2) components
    double u_linf_h1 = 0;
    double u_w1p_leg = 0;        // E0^{(p-2)/(2p-2)} ||u||_{Linf W^{1,p}}^{p/(2p-2)}
    double emb_linf_b74_high = 0;  // c^{-3/4} ||(E,B)||_{CL^inf B^{7/4}_{2,1,>}}
    double emb_l2_b74_high = 0;    // c^{1/4}  ||(E,B)||_{CL^2  B^{7/4}_{2,1,>}}
    double emb_l2_b1inf_high = 0;  // ||(E,B)||_{CL^2 B^1_{inf,1,>}}
    double emb_linf_h1 = 0;
    double ce_l2_h1 = 0;         // c ||E||_{L^2 H^1}
    double b_l2_b2_low = 0;      // ||B||_{L^2 B^2_{2,1,<}}
    double h_total = 0;
    double p = 4;

    std::vector<double> times, kinetic, electric, magnetic;
};

EnergyReport energy_report(const Trajectory& traj, const PhysParams& params,
                           const std::vector<double>& partition);

// max_t of ||omega(t)||_2 - [ ||omega(0)||_2 + ||j||_{L^2 L^2} ||grad b||_{L^2 Linf} ]
// along the trajectory (should stay below the quadrature tolerance).
double vorticity_bound_excess(const Trajectory& traj);

}  // namespace emlab
