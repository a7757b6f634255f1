#pragma once

#include <stdexcept>

namespace emlab {

// Physical parameters of the plasma system: speed of light c, conductivity
// sigma, optional viscosity nu, and the spectral truncation exponent
// cutoff_index (modes with |k| > 2^cutoff_index are dropped from nonlinear
// terms; negative means "use the dealiasing radius").
struct PhysParams {
    double c = 1.0;
    double sigma = 1.0;
    double nu = 0.0;
    int cutoff_index = -1;

    void validate() const {
        if (!(c > 0)) throw std::invalid_argument("PhysParams: c must be > 0");
        if (!(sigma > 0)) throw std::invalid_argument("PhysParams: sigma must be > 0");
        if (nu < 0) throw std::invalid_argument("PhysParams: nu must be >= 0");
    }
};

}  // namespace emlab
