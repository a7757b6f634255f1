#pragma once

#include <complex>
#include <vector>

#include "emlab/fft.hpp"
#include "emlab/grid.hpp"

namespace emlab {

// Real scalar field on a periodic grid, stored by its spectral coefficients
// (full N x N complex array, Hermitian-symmetric for real-valued fields).
// Row-major storage: coefficient of mode (kx, ky) lives at
// index_of(kx)*n + index_of(ky).
class Field {
  public:
    Field() = default;
    explicit Field(const Grid& g) : grid_(g), spec_(g.size(), Complex(0, 0)) {}

    const Grid& grid() const { return grid_; }
    int n() const { return grid_.n; }

    Complex& spec(int ix, int iy) { return spec_[static_cast<std::size_t>(ix) * grid_.n + iy]; }
    const Complex& spec(int ix, int iy) const {
        return spec_[static_cast<std::size_t>(ix) * grid_.n + iy];
    }
    Complex& at_mode(int kx, int ky) { return spec(grid_.index_of(kx), grid_.index_of(ky)); }
    const Complex& at_mode(int kx, int ky) const {
        return spec(grid_.index_of(kx), grid_.index_of(ky));
    }

    std::vector<Complex>& data() { return spec_; }
    const std::vector<Complex>& data() const { return spec_; }

    // Transform to physical grid values (real part; imaginary part is
    // roundoff for Hermitian data).
    std::vector<double> to_physical() const;
    // Overwrite spectral content from physical grid values.
    void from_physical(const std::vector<double>& phys);

    static Field from_physical_values(const Grid& g, const std::vector<double>& phys);

    // Enforce conjugate symmetry spec(-k) = conj(spec(k)); projects onto the
    // nearest real-valued field.
    void make_hermitian();
    void zero_mean() { spec_[0] = Complex(0, 0); }
    double mean_coeff_abs() const { return std::abs(spec_[0]); }

    // Spectral truncation to |kx|,|ky| <= radius (2/3-rule hygiene).
    void truncate(int radius);

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);
    Field operator+(const Field& o) const;
    Field operator-(const Field& o) const;
    Field operator*(double a) const;

    // sqrt(L^2 sum |fhat|^2): the L^2(torus) norm via Parseval.
    double l2_spectral() const;

  private:
    Grid grid_;
    std::vector<Complex> spec_;
};

// In-plane vector field (two scalar components).
struct Field2 {
    Field x, y;

    Field2() = default;
    explicit Field2(const Grid& g) : x(g), y(g) {}
    Field2(Field fx, Field fy);

    const Grid& grid() const { return x.grid(); }

    Field2& operator+=(const Field2& o);
    Field2& operator-=(const Field2& o);
    Field2& operator*=(double a);
    Field2 operator+(const Field2& o) const;
    Field2 operator-(const Field2& o) const;
    Field2 operator*(double a) const;

    double l2_spectral() const;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace emlab
