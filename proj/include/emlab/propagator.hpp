#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "emlab/field.hpp"
#include "emlab/params.hpp"

namespace emlab {

// ---------------------------------------------------------------------------
// Scalar kernels.
// ---------------------------------------------------------------------------

// Eigenvalues lambda_pm = -alpha/2 +- sqrt(alpha^2/4 - xi^2) of the damped
// oscillator pair; lambda_+ + lambda_- = -alpha, lambda_+ * lambda_- = xi^2.
std::pair<Complex, Complex> damped_eigenvalues(double xi_mag, double alpha);

// phi_1(z) = (e^z - 1)/z, phi_2(z) = (e^z - 1 - z)/z^2, entire; series
// evaluation near the origin, closed form elsewhere.
Complex phi1(Complex z);
Complex phi2(Complex z);

// Entire functions used in divided differences below.
enum class Kernel { exp, phi1, phi2, zexp };

// Divided difference f[z+, z-] = (f(z+) - f(z-)) / (z+ - z-), switching to a
// Taylor expansion around the midpoint when the eigenvalues nearly coincide
// (cancellation guard for |xi| near alpha/2).
Complex ddiff(Kernel f, Complex zp, Complex zm);
Complex kernel_eval(Kernel f, Complex z);

// ---------------------------------------------------------------------------
// 2x2 pair flow: d/dt (e, b) = M (e, b), M = [[-alpha, i kappa], [i kappa, 0]].
// Covers the damped wave pair (alpha, |xi|) and the solenoidal Maxwell block
// (sigma c^2, c |xi|). f(dt M) is a I + b dt M with a, b from the spectral
// decomposition; degenerate eigenvalues go through ddiff.
// ---------------------------------------------------------------------------

struct Mat2 {
    Complex m11{0, 0}, m12{0, 0}, m21{0, 0}, m22{0, 0};
    void apply(Complex& u, Complex& v) const {
        Complex a = m11 * u + m12 * v;
        Complex b = m21 * u + m22 * v;
        u = a;
        v = b;
    }
};

Mat2 pair_func(Kernel f, double alpha, double kappa, double dt);

// Bundle used by ETD2 stepping: exp(dt M), phi1(dt M), phi2(dt M).
struct PairOps {
    Mat2 exp, p1, p2;
};
PairOps pair_ops(double alpha, double kappa, double dt);

// ---------------------------------------------------------------------------
// Damped Maxwell mode propagator:
//   (1/c) dE/dt - curl B + sigma c E = G,   (1/c) db/dt + curl2 E = 0,
// advanced exactly per Fourier mode. The solenoidal component of E couples to
// b through the pair flow with (alpha, kappa) = (sigma c^2, c |xi|); the
// gradient component and the zero mode decay as exp(-sigma c^2 t) driven by
// c P_perp G.
// ---------------------------------------------------------------------------

class MaxwellPropagator {
  public:
    MaxwellPropagator(const Grid& g, const PhysParams& params, double dt);

    const Grid& grid() const { return grid_; }
    double dt() const { return dt_; }

    // u <- exp(dt L) u  (homogeneous flow)
    void flow(Field2& E, Field& b) const;
    // u <- exp(dt L) u + dt phi1(dt L) (c g0): ETD1 / predictor stage.
    void etd1(Field2& E, Field& b, const Field2& g0) const;
    // u += dt phi2(dt L) (c (g1 - g0)): ETD2RK corrector increment.
    void etd2_correct(Field2& E, Field& b, const Field2& g0, const Field2& g1) const;

    // Per-mode solenoidal ops (exposed for the estimates lab and tests).
    const PairOps& mode_ops(int ix, int iy) const {
        return ops_[static_cast<std::size_t>(ix) * grid_.n + iy];
    }
    double grad_decay() const { return grad_exp_; }

  private:
    Grid grid_;
    PhysParams params_;
    double dt_;
    std::vector<PairOps> ops_;  // per mode, (e_sol, b) basis
    double grad_exp_, grad_p1_, grad_p2_;  // scalar ops on the gradient part
};

// Exact homogeneous damped-Maxwell flow evaluated at an arbitrary time.
void maxwell_flow_at(const Grid& g, const PhysParams& params, double t, Field2& E, Field& b);

// ---------------------------------------------------------------------------
// Scalar dispersive propagators (damped Schrodinger / half-wave / wave).
// ---------------------------------------------------------------------------

enum class ScalarKind { schrodinger, halfwave, wave };

// Exact homogeneous evolution of the damped wave pair (e, b) = (du/dt, |D|u
// rotated): per mode (e, b) <- exp(t M(alpha, |xi|)) (e, b). For Schrodinger
// and half-wave the state is the single field u with scalar symbols
// exp(t(-alpha - i |xi|^2)) and exp(t(-alpha + i |xi|)).
class ScalarFlow {
  public:
    ScalarFlow(const Grid& g, ScalarKind kind, double alpha);

    // Builds (e, b)(t) from wave data (f, g): e0 = g, b0hat = i |xi| fhat.
    void wave_pair_at(const Field& f, const Field& g, double t, Field& e, Field& b) const;
    // u(t) for schrodinger / halfwave data f.
    Field state_at(const Field& f, double t) const;

    ScalarKind kind() const { return kind_; }
    double alpha() const { return alpha_; }

  private:
    Grid grid_;
    ScalarKind kind_;
    double alpha_;
};

// Stepped trajectory with an ETD2 Duhamel term for a sampled source.
// For kind == wave, g is the initial velocity and the returned snapshots hold
// u(t); for the first-order kinds g is ignored.
struct ScalarTrajectory {
    std::vector<double> times;
    std::vector<Field> u;
    std::vector<Field> dudt;  // wave only
};

ScalarTrajectory scalar_propagator(ScalarKind kind, double alpha, const Field& f, const Field& g,
                                   const std::function<Field(double)>* source, double t_end,
                                   double dt);

// ---------------------------------------------------------------------------
// Time-dependent Fourier multipliers of the damped wave representation
// formula: m1 = (e^{t l+} - e^{t l-})/(l+ - l-), m2 = (l+ e^{t l+} - l-
// e^{t l-})/(l+ - l-), m3 = (l- e^{t l+} - l+ e^{t l-})/(l+ - l-), and the
// split pieces m2p = l+ e^{t l+}/(xi^2 (l+ - l-)), m2m = l- e^{t l-}/(l+ -
// l-). All carry the compensating heat factor exp(A t xi^2 / alpha) (m2m
// carries exp(A t alpha)); A in (0, 1/2).
// ---------------------------------------------------------------------------

struct WaveMultipliers {
    double t = 0, alpha = 0, A = 0.25;
    std::vector<Complex> m1, m2, m2p, m2m, m3;  // lattice arrays

    static WaveMultipliers evaluate(const Grid& g, double t, double alpha, double A = 0.25);

    // Pointwise evaluation at one radius (used by the continuity tests).
    static Complex m1_at(double xi_mag, double t, double alpha, double A = 0.25);
    static Complex m2_at(double xi_mag, double t, double alpha, double A = 0.25);
    static Complex m3_at(double xi_mag, double t, double alpha, double A = 0.25);
};

}  // namespace emlab
