#include "emlab/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>

namespace emlab {

namespace {

double bump(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }

// Smooth step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    double a = bump(x), b = bump(1.0 - x);
    return a / (a + b);
}

double radial(const Grid& g, int ix, int iy) {
    double kx = g.wavenumber(ix), ky = g.wavenumber(iy);
    return std::hypot(kx, ky);
}

}  // namespace

double LittlewoodPaley::phi_profile(double r) {
    if (r <= A_LO || r >= 2 * A_HI) return 0.0;
    if (r < A_HI) return smooth_step((r - A_LO) / (A_HI - A_LO));
    if (r <= 2 * A_LO) return 1.0;
    return 1.0 - smooth_step((r / 2 - A_LO) / (A_HI - A_LO));
}

double LittlewoodPaley::psi_profile(double r) {
    if (r <= A_LO) return 1.0;
    if (r >= A_HI) return 0.0;
    return 1.0 - smooth_step((r - A_LO) / (A_HI - A_LO));
}

LittlewoodPaley::LittlewoodPaley(const Grid& g) : grid_(g) {
    // Smallest and largest |xi| on the lattice determine the block range.
    double xi_min = g.dk();
    double xi_max = g.dk() * (g.n / 2) * std::sqrt(2.0);
    k_min_ = static_cast<int>(std::floor(std::log2(xi_min / (2 * A_HI)))) ;
    k_max_ = static_cast<int>(std::ceil(std::log2(xi_max / A_LO)));
    // Trim blocks with no lattice support.
    auto has_support = [&](int k) {
        double lo = A_LO * std::pow(2.0, k), hi = 2 * A_HI * std::pow(2.0, k);
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy) {
                double r = radial(g, ix, iy);
                if (r > lo && r < hi) return true;
            }
        return false;
    };
    while (k_min_ < k_max_ && !has_support(k_min_)) ++k_min_;
    while (k_max_ > k_min_ && !has_support(k_max_)) --k_max_;

    phi_.resize(k_max_ - k_min_ + 1);
    for (int k = k_min_; k <= k_max_; ++k) {
        auto& m = phi_[k - k_min_];
        m.resize(g.size());
        double scale = std::pow(2.0, -k);
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                m[static_cast<std::size_t>(ix) * g.n + iy] = phi_profile(scale * radial(g, ix, iy));
    }
}

const std::vector<double>& LittlewoodPaley::phi_mult(int k) const {
    if (k < k_min_ || k > k_max_)
        throw std::out_of_range("LittlewoodPaley: block index outside representable range");
    return phi_[k - k_min_];
}

Field LittlewoodPaley::block(const Field& f, int k) const {
    require_same_grid(f.grid(), grid_, "LittlewoodPaley::block");
    const auto& m = phi_mult(k);
    Field out(grid_);
    for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = m[i] * f.data()[i];
    return out;
}

Field LittlewoodPaley::low_pass(const Field& f, int m) const {
    require_same_grid(f.grid(), grid_, "LittlewoodPaley::low_pass");
    Field out(grid_);
    double scale = std::pow(2.0, -m);
    for (int ix = 0; ix < grid_.n; ++ix)
        for (int iy = 0; iy < grid_.n; ++iy)
            out.spec(ix, iy) = psi_profile(scale * radial(grid_, ix, iy)) * f.spec(ix, iy);
    return out;
}

double LittlewoodPaley::block_lp(const Field& f, int k, double p) const {
    std::vector<const Field*> comps{&f};
    return block_lp(comps, k, p);
}

double LittlewoodPaley::block_lp(const std::vector<const Field*>& comps, int k, double p) const {
    const auto& m = phi_mult(k);
    if (p == 2.0) {
        double s = 0;
        for (const Field* f : comps) {
            const auto& d = f->data();
            for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * m[i] * std::norm(d[i]);
        }
        return grid_.length * std::sqrt(s);
    }
    // General p: build per-component physical blocks and combine magnitudes.
    std::vector<std::vector<double>> phys;
    phys.reserve(comps.size());
    for (const Field* f : comps) phys.push_back(block(*f, k).to_physical());
    std::vector<double> mag(phys[0].size(), 0.0);
    for (const auto& ph : phys)
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += ph[i] * ph[i];
    if (std::isinf(p)) {
        double mx = 0;
        for (double v : mag) mx = std::max(mx, v);
        return std::sqrt(mx);
    }
    double cell = grid_.dx() * grid_.dx();
    double s = 0;
    for (double v : mag) s += std::pow(std::sqrt(v), p);
    return std::pow(cell * s, 1.0 / p);
}

void NormSpec::validate() const {
    if (p < 1 || q < 1 || r < 1) throw std::invalid_argument("NormSpec: p, q, r must be >= 1");
    if (split != Split::all && !(split_threshold > 0))
        throw std::invalid_argument("NormSpec: split requires a positive threshold");
}

bool NormSpec::includes_block(int k) const {
    if (split == Split::all) return true;
    double f = std::pow(2.0, k);
    return split == Split::below ? f < split_threshold : f >= split_threshold;
}

namespace {

double weighted_lq(const std::vector<double>& vals, double q) {
    if (std::isinf(q)) {
        double m = 0;
        for (double v : vals) m = std::max(m, v);
        return m;
    }
    double s = 0;
    for (double v : vals) s += std::pow(v, q);
    return std::pow(s, 1.0 / q);
}

}  // namespace

double besov_norm(const std::vector<const Field*>& comps, const NormSpec& spec,
                  const LittlewoodPaley& lp) {
    spec.validate();
    if (spec.flavor != NormFlavor::besov)
        throw std::invalid_argument("besov_norm: spec flavor must be besov");
    std::vector<double> vals;
    for (int k = lp.k_min(); k <= lp.k_max(); ++k) {
        if (!spec.includes_block(k)) continue;
        vals.push_back(std::pow(2.0, k * spec.s) * lp.block_lp(comps, k, spec.p));
    }
    return weighted_lq(vals, spec.q);
}

double besov_norm(const Field& f, const NormSpec& spec, const LittlewoodPaley& lp) {
    std::vector<const Field*> comps{&f};
    return besov_norm(comps, spec, lp);
}

void TimeSeriesNorms::append(double time, const std::vector<const Field*>& comps, double p,
                             const LittlewoodPaley& lp) {
    if (rows.empty()) {
        k_min = lp.k_min();
        rows.resize(lp.k_max() - lp.k_min() + 1);
    }
    if (!times.empty() && time <= times.back())
        throw std::invalid_argument("TimeSeriesNorms: times must be strictly increasing");
    times.push_back(time);
    for (int k = lp.k_min(); k <= lp.k_max(); ++k)
        rows[k - k_min].push_back(lp.block_lp(comps, k, p));
}

double time_lr_norm(const std::vector<double>& times, const std::vector<double>& values,
                    double r) {
    if (times.empty()) throw std::invalid_argument("time_lr_norm: empty time series");
    if (times.size() != values.size()) throw std::invalid_argument("time_lr_norm: size mismatch");
    if (std::isinf(r)) {
        double m = 0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    if (times.size() == 1) return 0.0;
    double s = 0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        double dt = times[i + 1] - times[i];
        s += 0.5 * dt * (std::pow(std::abs(values[i]), r) + std::pow(std::abs(values[i + 1]), r));
    }
    return std::pow(s, 1.0 / r);
}

double chemin_lerner_norm(const TimeSeriesNorms& ts, const NormSpec& spec) {
    spec.validate();
    if (spec.flavor != NormFlavor::chemin_lerner)
        throw std::invalid_argument("chemin_lerner_norm: spec flavor must be chemin_lerner");
    if (ts.times.empty()) throw std::invalid_argument("chemin_lerner_norm: empty time series");
    std::vector<double> vals;
    for (std::size_t j = 0; j < ts.rows.size(); ++j) {
        int k = ts.k_min + static_cast<int>(j);
        if (!spec.includes_block(k)) continue;
        vals.push_back(std::pow(2.0, k * spec.s) * time_lr_norm(ts.times, ts.rows[j], spec.r));
    }
    return weighted_lq(vals, spec.q);
}

BonyDecomposition paraproduct(const Field& f, const Field& g, const LittlewoodPaley& lp) {
    require_same_grid(f.grid(), g.grid(), "paraproduct");
    const Grid& grid = f.grid();
    BonyDecomposition out{Field(grid), Field(grid), Field(grid)};

    int klo = lp.k_min(), khi = lp.k_max();
    std::vector<Field> fblocks, gblocks;
    fblocks.reserve(khi - klo + 1);
    gblocks.reserve(khi - klo + 1);
    for (int k = klo; k <= khi; ++k) {
        fblocks.push_back(lp.block(f, k));
        gblocks.push_back(lp.block(g, k));
    }

    for (int j = klo; j <= khi; ++j) {
        out.t_fg += multiply_raw(lp.low_pass(f, j - 2), gblocks[j - klo]);
        out.t_gf += multiply_raw(lp.low_pass(g, j - 2), fblocks[j - klo]);
        for (int k = std::max(klo, j - 2); k <= std::min(khi, j + 2); ++k)
            out.remainder += multiply_raw(fblocks[j - klo], gblocks[k - klo]);
    }
    return out;
}

ProductLawReport product_law_report(const Field2& f, const Field& g, double s, double t,
                                    const LittlewoodPaley& lp) {
    if (s >= 1.0) throw std::invalid_argument("product_law_report: requires s < 1 (non-endpoint)");
    if (t >= 2.0) throw std::invalid_argument("product_law_report: requires t < 2");
    if (s + t <= 0.0) throw std::invalid_argument("product_law_report: requires s + t > 0");
    Field2 pfg = leray_project(cross_normal(f, g));
    NormSpec lhs_spec(s + t - 1.0, 2.0, 1.0);
    NormSpec f_spec(s, 2.0, 2.0);
    NormSpec g_spec(t, 2.0, 2.0);
    ProductLawReport rep;
    std::vector<const Field*> pf{&pfg.x, &pfg.y};
    std::vector<const Field*> ff{&f.x, &f.y};
    rep.lhs = besov_norm(pf, lhs_spec, lp);
    rep.rhs = besov_norm(ff, f_spec, lp) * besov_norm(g, g_spec, lp);
    rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0.0;
    return rep;
}

}  // namespace emlab
