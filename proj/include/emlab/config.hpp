#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emlab/initial_data.hpp"
#include "emlab/params.hpp"

namespace emlab {

// Experiment configuration parsed from a flat key = value file (diff-able,
// language-neutral). Unknown keys are rejected; every violated invariant is
// named in the error.
struct ExperimentConfig {
    std::string kind = "simulate";  // simulate | sweep-c | strichartz | dispersion |
                                    // heat | besov-check | energy-report
    // grid
    int n = 64;
    double length = 2 * M_PI;
    // physics
    double c = 8.0;
    double sigma = 1.0;
    double nu = 0.0;
    int cutoff_index = -1;
    // integrator
    double dt = 1e-3;
    double t_end = 1.0;
    int snap_stride = 10;
    // initial data
    DataRecipe recipe;
    // sweep / lab knobs
    std::vector<double> c_list{4, 8, 16, 32};
    double alpha = 0.0;
    double q = 4.0, r = inf;
    std::vector<int> shells{3, 4, 5, 6};
    // execution
    std::string out_dir = "out";
    int threads = 2;

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_string(const std::string& text);

    void validate() const;
    std::string canonical_text() const;  // normalized key = value dump
    std::uint64_t config_hash() const;

    PhysParams phys() const {
        PhysParams p;
        p.c = c;
        p.sigma = sigma;
        p.nu = nu;
        p.cutoff_index = cutoff_index;
        return p;
    }
};

}  // namespace emlab
