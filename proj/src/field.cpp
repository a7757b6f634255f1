#include "emlab/field.hpp"

#include <cmath>
#include <stdexcept>

namespace emlab {

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) + ": mismatched grids");
}

std::vector<double> Field::to_physical() const {
    std::vector<Complex> phys;
    Fft::get(grid_.n).backward(spec_, phys);
    std::vector<double> out(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i) out[i] = phys[i].real();
    return out;
}

void Field::from_physical(const std::vector<double>& phys) {
    if (phys.size() != spec_.size()) throw std::invalid_argument("Field: physical size mismatch");
    std::vector<Complex> tmp(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i) tmp[i] = Complex(phys[i], 0);
    Fft::get(grid_.n).forward(tmp, spec_);
}

Field Field::from_physical_values(const Grid& g, const std::vector<double>& phys) {
    Field f(g);
    f.from_physical(phys);
    return f;
}

void Field::make_hermitian() {
    int n = grid_.n;
    for (int ix = 0; ix < n; ++ix) {
        int jx = (n - ix) % n;
        for (int iy = 0; iy < n; ++iy) {
            int jy = (n - iy) % n;
            std::size_t a = static_cast<std::size_t>(ix) * n + iy;
            std::size_t b = static_cast<std::size_t>(jx) * n + jy;
            if (a > b) continue;
            Complex avg = 0.5 * (spec_[a] + std::conj(spec_[b]));
            spec_[a] = avg;
            spec_[b] = std::conj(avg);
        }
    }
}

void Field::truncate(int radius) {
    int n = grid_.n;
    for (int ix = 0; ix < n; ++ix) {
        int kx = grid_.mode(ix);
        for (int iy = 0; iy < n; ++iy) {
            int ky = grid_.mode(iy);
            if (std::abs(kx) > radius || std::abs(ky) > radius)
                spec(ix, iy) = Complex(0, 0);
        }
    }
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(grid_, o.grid_, "Field+=");
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] += o.spec_[i];
    return *this;
}
Field& Field::operator-=(const Field& o) {
    require_same_grid(grid_, o.grid_, "Field-=");
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] -= o.spec_[i];
    return *this;
}
Field& Field::operator*=(double a) {
    for (auto& c : spec_) c *= a;
    return *this;
}
Field Field::operator+(const Field& o) const {
    Field r = *this;
    r += o;
    return r;
}
Field Field::operator-(const Field& o) const {
    Field r = *this;
    r -= o;
    return r;
}
Field Field::operator*(double a) const {
    Field r = *this;
    r *= a;
    return r;
}

double Field::l2_spectral() const {
    double s = 0;
    for (const auto& c : spec_) s += std::norm(c);
    return grid_.length * std::sqrt(s);
}

Field2::Field2(Field fx, Field fy) : x(std::move(fx)), y(std::move(fy)) {
    require_same_grid(x.grid(), y.grid(), "Field2");
}

Field2& Field2::operator+=(const Field2& o) {
    x += o.x;
    y += o.y;
    return *this;
}
Field2& Field2::operator-=(const Field2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
}
Field2& Field2::operator*=(double a) {
    x *= a;
    y *= a;
    return *this;
}
Field2 Field2::operator+(const Field2& o) const {
    Field2 r = *this;
    r += o;
    return r;
}
Field2 Field2::operator-(const Field2& o) const {
    Field2 r = *this;
    r -= o;
    return r;
}
Field2 Field2::operator*(double a) const {
    Field2 r = *this;
    r *= a;
    return r;
}

double Field2::l2_spectral() const {
    double sx = x.l2_spectral(), sy = y.l2_spectral();
    return std::sqrt(sx * sx + sy * sy);
}

}  // namespace emlab
