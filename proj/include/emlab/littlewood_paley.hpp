#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "emlab/field.hpp"
#include "emlab/spectral_ops.hpp"

namespace emlab {

// Dyadic Littlewood-Paley machinery on the wavenumber lattice.
//
// The radial cutoff phi is built from the bump eta(x) = exp(-1/x) via a
// smoothed step, with supp phi in [A_LO, 2*A_HI], phi == 1 on the plateau
// [A_HI, 2*A_LO], and the exact complementarity phi(r) + phi(r/2) = 1 on
// the overlap, so that psi(xi) + sum_{k>=0} phi(2^{-k} xi) = 1 holds at
// every lattice point. Narrow transitions keep sum_k phi_k^2 close to 1
// (near-orthogonal blocks).
class LittlewoodPaley {
  public:
    static constexpr double A_LO = 0.70;  // transition start
    static constexpr double A_HI = 0.74;  // transition end (plateau start)

    explicit LittlewoodPaley(const Grid& g);

    const Grid& grid() const { return grid_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_max_; }

    static double phi_profile(double r);
    static double psi_profile(double r);

    // Delta_k f: spectral multiplication by phi(2^{-k} xi).
    Field block(const Field& f, int k) const;
    // S_m f: spectral multiplication by psi(2^{-m} xi) (carries the mean).
    Field low_pass(const Field& f, int m) const;

    // ||Delta_k f||_{L^p} without materializing the block when p == 2.
    double block_lp(const Field& f, int k, double p) const;
    // Combined magnitude over several components (vector-field block norm).
    double block_lp(const std::vector<const Field*>& comps, int k, double p) const;

    // Lattice multiplier values for block k (row-major like Field storage).
    const std::vector<double>& phi_mult(int k) const;

  private:
    Grid grid_;
    int k_min_, k_max_;
    std::vector<std::vector<double>> phi_;  // per block
};

enum class Split { all, below, above };
enum class NormFlavor { besov, chemin_lerner };

constexpr double inf = std::numeric_limits<double>::infinity();

// Frequency-weighted norm specification: ell^q over blocks of
// 2^{ks} ||Delta_k f||_{L^p}, optionally restricted to 2^k < threshold
// (below) or 2^k >= threshold (above), with an L^r-in-time layer for the
// Chemin-Lerner flavor.
struct NormSpec {
    double s = 0;
    double p = 2;
    double q = 2;
    double r = inf;
    Split split = Split::all;
    double split_threshold = 0;
    NormFlavor flavor = NormFlavor::besov;

    NormSpec() = default;
    NormSpec(double s_, double p_, double q_) : s(s_), p(p_), q(q_) {}

    void validate() const;
    bool includes_block(int k) const;
};

double besov_norm(const Field& f, const NormSpec& spec, const LittlewoodPaley& lp);
double besov_norm(const std::vector<const Field*>& comps, const NormSpec& spec,
                  const LittlewoodPaley& lp);

// Per-block time series of ||Delta_k f(t)||_{L^p}.
struct TimeSeriesNorms {
    std::vector<double> times;
    int k_min = 0;
    std::vector<std::vector<double>> rows;  // rows[j][it], block k_min + j

    void append(double time, const std::vector<const Field*>& comps, double p,
                const LittlewoodPaley& lp);
};

// L^r-in-time per block (trapezoid), then weighted ell^q across blocks.
double chemin_lerner_norm(const TimeSeriesNorms& ts, const NormSpec& spec);

// L^r in time of a scalar sample series, trapezoid rule (r = inf -> max).
double time_lr_norm(const std::vector<double>& times, const std::vector<double>& values,
                    double r);

struct BonyDecomposition {
    Field t_fg;       // sum_j S_{j-2} f * Delta_j g
    Field t_gf;       // sum_j S_{j-2} g * Delta_j f
    Field remainder;  // sum_{|j-k|<=2} Delta_j f * Delta_k g
};

// Bony paraproduct decomposition; t_fg + t_gf + remainder reproduces the
// pointwise product f*g to roundoff for zero-mean inputs.
BonyDecomposition paraproduct(const Field& f, const Field& g, const LittlewoodPaley& lp);

// Measures ||P(F x G)||_{B^{s+t-1}_{2,1}} against ||F||_{B^s_{2,2}} *
// ||G||_{B^t_{2,2}} for solenoidal in-plane F and normal scalar G.
struct ProductLawReport {
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;  // lhs / rhs (0 when rhs == 0)
};
ProductLawReport product_law_report(const Field2& f, const Field& g, double s, double t,
                                    const LittlewoodPaley& lp);

}  // namespace emlab
