#include "emlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "emlab/util.hpp"

namespace emlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

double parse_real(const std::string& v) {
    if (v == "inf" || v == "infinity") return inf;
    return std::stod(v);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(stripped.substr(0, eq));
        std::string val = trim(stripped.substr(eq + 1));
        try {
            if (key == "kind") cfg.kind = val;
            else if (key == "n") cfg.n = std::stoi(val);
            else if (key == "length") cfg.length = parse_real(val);
            else if (key == "c") cfg.c = parse_real(val);
            else if (key == "sigma") cfg.sigma = parse_real(val);
            else if (key == "nu") cfg.nu = parse_real(val);
            else if (key == "cutoff_index") cfg.cutoff_index = std::stoi(val);
            else if (key == "dt") cfg.dt = parse_real(val);
            else if (key == "t_end") cfg.t_end = parse_real(val);
            else if (key == "snap_stride") cfg.snap_stride = std::stoi(val);
            else if (key == "recipe") cfg.recipe.name = val;
            else if (key == "seed") cfg.recipe.seed = std::stoull(val);
            else if (key == "amplitude") cfg.recipe.amplitude = parse_real(val);
            else if (key == "em_amplitude") cfg.recipe.em_amplitude = parse_real(val);
            else if (key == "shell_j") cfg.recipe.shell_j = std::stoi(val);
            else if (key == "spectrum_a") cfg.recipe.spectrum_a = parse_real(val);
            else if (key == "xi0") cfg.recipe.xi0 = parse_real(val);
            else if (key == "c_list") cfg.c_list = parse_list(val);
            else if (key == "alpha") cfg.alpha = parse_real(val);
            else if (key == "q") cfg.q = parse_real(val);
            else if (key == "r") cfg.r = parse_real(val);
            else if (key == "shells") {
                cfg.shells.clear();
                for (double d : parse_list(val)) cfg.shells.push_back(static_cast<int>(d));
            }
            else if (key == "out_dir") cfg.out_dir = val;
            else if (key == "threads") cfg.threads = std::stoi(val);
            else
                throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

void ExperimentConfig::validate() const {
    std::vector<std::string> errs;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) errs.push_back(msg);
    };
    check(kind == "simulate" || kind == "sweep-c" || kind == "strichartz" ||
              kind == "dispersion" || kind == "heat" || kind == "besov-check" ||
              kind == "energy-report",
          "kind: unknown experiment kind '" + kind + "'");
    check(n >= 8 && (n & (n - 1)) == 0, "n: must be a power of two >= 8");
    check(length > 0, "length: must be positive");
    check(c > 0, "c: must be positive");
    check(sigma > 0, "sigma: must be positive");
    check(nu >= 0, "nu: must be nonnegative");
    check(dt > 0, "dt: must be positive");
    check(t_end > 0, "t_end: must be positive");
    check(snap_stride >= 1, "snap_stride: must be >= 1");
    check(threads >= 1, "threads: must be >= 1");
    check(alpha >= 0, "alpha: must be nonnegative");
    check(recipe.name == "single-shell" || recipe.name == "random-smooth" ||
              recipe.name == "taylor-green",
          "recipe: unknown recipe '" + recipe.name + "'");
    if (!errs.empty()) {
        std::string msg = "invalid config:";
        for (const auto& e : errs) msg += "\n  - " + e;
        throw std::invalid_argument(msg);
    }
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    os << "kind = " << kind << "\n";
    os << "n = " << n << "\n";
    os << "length = " << format_double(length) << "\n";
    os << "c = " << format_double(c) << "\n";
    os << "sigma = " << format_double(sigma) << "\n";
    os << "nu = " << format_double(nu) << "\n";
    os << "cutoff_index = " << cutoff_index << "\n";
    os << "dt = " << format_double(dt) << "\n";
    os << "t_end = " << format_double(t_end) << "\n";
    os << "snap_stride = " << snap_stride << "\n";
    os << "recipe = " << recipe.name << "\n";
    os << "seed = " << recipe.seed << "\n";
    os << "amplitude = " << format_double(recipe.amplitude) << "\n";
    os << "em_amplitude = " << format_double(recipe.em_amplitude) << "\n";
    os << "shell_j = " << recipe.shell_j << "\n";
    os << "spectrum_a = " << format_double(recipe.spectrum_a) << "\n";
    os << "xi0 = " << format_double(recipe.xi0) << "\n";
    os << "c_list =";
    for (std::size_t i = 0; i < c_list.size(); ++i)
        os << (i ? "," : " ") << format_double(c_list[i]);
    os << "\n";
    os << "alpha = " << format_double(alpha) << "\n";
    os << "q = " << format_double(q) << "\n";
    os << "r = " << format_double(r) << "\n";
    os << "shells =";
    for (std::size_t i = 0; i < shells.size(); ++i) os << (i ? "," : " ") << shells[i];
    os << "\n";
    os << "threads = " << threads << "\n";
    return os.str();
}

std::uint64_t ExperimentConfig::config_hash() const { return fnv1a(canonical_text()); }

}  // namespace emlab
