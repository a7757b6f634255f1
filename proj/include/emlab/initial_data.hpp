#pragma once

#include <cstdint>
#include <string>

#include "emlab/solver.hpp"
#include "emlab/util.hpp"

namespace emlab {

// Named initial-data recipes. All outputs are zero-mean, band-limited by the
// cutoff, with div E = 0 enforced spectrally.
//   single-shell   random phases supported in dyadic shell shell_j
//   random-smooth  spectrum ~ |xi|^{-spectrum_a} exp(-|xi|^2/xi0^2), random phases
//   taylor-green   deterministic cellular vortex with a normal magnetic bump
struct DataRecipe {
    std::string name = "random-smooth";
    std::uint64_t seed = 1;
    double amplitude = 1.0;     // scales u (vorticity)
    double em_amplitude = 1.0;  // scales E and b
    int shell_j = 3;
    double spectrum_a = 2.0;
    double xi0 = 4.0;
};

NormalEMState make_initial_data(const DataRecipe& recipe, const Grid& g,
                                const PhysParams& params);

// Scalar helpers used directly by the estimates lab.
Field random_smooth_field(const Grid& g, Rng& rng, double a, double xi0, int radius);
Field shell_field(const Grid& g, Rng& rng, int shell_j);
// Coherent-phase wave packet supported in shell j, centered at x0 (grid units).
Field shell_packet(const Grid& g, int shell_j, double x0, double y0);
// Knapp-type beam: shell j restricted to a cap of angular half-width theta
// around direction +e1, phases centered at x0.
Field knapp_packet(const Grid& g, int shell_j, double theta, double x0, double y0);
// All lattice modes at exact integer radius ring_k (single |xi| magnitude).
Field ring_field(const Grid& g, Rng& rng, int ring_k);

}  // namespace emlab
