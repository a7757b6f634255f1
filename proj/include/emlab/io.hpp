#pragma once

#include <string>
#include <vector>

#include "emlab/config.hpp"
#include "emlab/solver.hpp"

namespace emlab {

// Byte-stable CSV writer: fixed column order, %.17g doubles, no timestamps.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    ~CsvWriter();

  private:
    void* out_;  // std::ofstream kept opaque
};

// Snapshot file: one ASCII header line "emlab-snapshot N L c sigma nu time"
// followed by the raw spectral coefficients (interleaved re, im doubles,
// row-major; omega, E1, E2, b in that order).
void write_snapshot(const std::string& path, const NormalEMState& s, const PhysParams& params);
NormalEMState read_snapshot(const std::string& path, PhysParams* params_out = nullptr);

// run-<tag>/snap-<step> naming convention.
std::string snapshot_path(const std::string& dir, const std::string& tag, long step);

void write_manifest(const std::string& path, const ExperimentConfig& cfg, double wall_seconds);

void ensure_dir(const std::string& path);

}  // namespace emlab
