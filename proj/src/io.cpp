#include "emlab/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "emlab/util.hpp"
#include "json.hpp"

namespace emlab {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header) {
    auto* f = new std::ofstream(path);
    if (!*f) {
        delete f;
        throw std::runtime_error("CsvWriter: cannot open " + path);
    }
    out_ = f;
    for (std::size_t i = 0; i < header.size(); ++i) (*f) << (i ? "," : "") << header[i];
    (*f) << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    auto* f = static_cast<std::ofstream*>(out_);
    for (std::size_t i = 0; i < values.size(); ++i)
        (*f) << (i ? "," : "") << format_double(values[i]);
    (*f) << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    auto* f = static_cast<std::ofstream*>(out_);
    for (std::size_t i = 0; i < values.size(); ++i) (*f) << (i ? "," : "") << values[i];
    (*f) << "\n";
}

CsvWriter::~CsvWriter() { delete static_cast<std::ofstream*>(out_); }

void ensure_dir(const std::string& path) { std::filesystem::create_directories(path); }

std::string snapshot_path(const std::string& dir, const std::string& tag, long step) {
    std::ostringstream os;
    os << dir << "/run-" << tag << "/snap-" << step;
    return os.str();
}

namespace {

void write_field(std::ofstream& out, const Field& f) {
    std::vector<double> buf(2 * f.data().size());
    for (std::size_t i = 0; i < f.data().size(); ++i) {
        buf[2 * i] = f.data()[i].real();
        buf[2 * i + 1] = f.data()[i].imag();
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(double)));
}

void read_field(std::ifstream& in, Field& f) {
    std::vector<double> buf(2 * f.data().size());
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    for (std::size_t i = 0; i < f.data().size(); ++i)
        f.data()[i] = Complex(buf[2 * i], buf[2 * i + 1]);
}

}  // namespace

void write_snapshot(const std::string& path, const NormalEMState& s, const PhysParams& params) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    out << "emlab-snapshot " << s.grid().n << " " << format_double(s.grid().length) << " "
        << format_double(params.c) << " " << format_double(params.sigma) << " "
        << format_double(params.nu) << " " << format_double(s.time) << "\n";
    write_field(out, s.omega);
    write_field(out, s.E.x);
    write_field(out, s.E.y);
    write_field(out, s.b);
}

NormalEMState read_snapshot(const std::string& path, PhysParams* params_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    std::string magic;
    int n;
    double length, c, sigma, nu, time;
    in >> magic >> n >> length >> c >> sigma >> nu >> time;
    if (magic != "emlab-snapshot") throw std::runtime_error("read_snapshot: bad header");
    in.get();  // newline
    Grid g(n, length);
    NormalEMState s(g);
    s.time = time;
    read_field(in, s.omega);
    read_field(in, s.E.x);
    read_field(in, s.E.y);
    read_field(in, s.b);
    if (params_out) {
        params_out->c = c;
        params_out->sigma = sigma;
        params_out->nu = nu;
    }
    return s;
}

void write_manifest(const std::string& path, const ExperimentConfig& cfg, double wall_seconds) {
    nlohmann::json j;
    j["tool"] = "emlab";
    j["version"] = "0.1.0";
    j["config_hash"] = cfg.config_hash();
    j["config"] = cfg.canonical_text();
    j["wall_seconds"] = wall_seconds;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << "\n";
}

}  // namespace emlab
