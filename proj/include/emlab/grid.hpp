#pragma once

#include <cmath>
#include <stdexcept>

namespace emlab {

// Uniform periodic grid on the torus [0,L)^2 with the standard FFT wavenumber
// lattice xi = (2*pi/L)*k, k in {-N/2, ..., N/2-1} per axis.
struct Grid {
    int n = 0;          // points per axis, power of two, >= 8
    double length = 0;  // torus side L

    Grid() = default;
    Grid(int n_points, double side) : n(n_points), length(side) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n_points must be a power of two >= 8");
        if (!(length > 0))
            throw std::invalid_argument("Grid: length must be positive");
    }

    int size() const { return n * n; }
    double dx() const { return length / n; }
    double dk() const { return 2.0 * M_PI / length; }

    // Signed integer mode for storage index i in [0, n).
    int mode(int i) const { return i < n / 2 ? i : i - n; }
    // Storage index of signed mode k in [-n/2, n/2).
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    double wavenumber(int i) const { return dk() * mode(i); }

    // Largest retained |k| per axis under the 2/3 rule.
    int dealias_radius() const { return n / 3; }
    double max_wavenumber() const { return dk() * dealias_radius(); }

    bool operator==(const Grid& o) const { return n == o.n && length == o.length; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

}  // namespace emlab
