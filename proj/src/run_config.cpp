#include "braggcav/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace braggcav {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    const auto last = s.find_last_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    return std::string{s.substr(first, last - first + 1)};
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a number");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

// complex values are "re" or "re,im"
cplx parse_complex(const std::string& key, const std::string& value) {
    const auto comma = value.find(',');
    if (comma == std::string::npos) return {parse_double(key, value), 0.0};
    return {parse_double(key, trim(value.substr(0, comma))),
            parse_double(key, trim(value.substr(comma + 1)))};
}

const std::set<std::string> kPhysicalKeys = {
    "dipole_moment", "wavelength", "detuning", "overlap_a", "atoms_per_site"};

const std::set<std::string> kKnownKeys = {
    "lambda",       "dipole_moment", "wavelength",   "detuning",
    "overlap_a",    "atoms_per_site", "n_sites",     "r1_intensity",
    "r2_intensity", "drive_left",    "drive_right",  "chi",
    "za_over_l",    "u_min",         "u_max",        "n_u",
    "chi_min",      "chi_max",       "n_chi",        "n_chi_track",
    "samples_per_segment", "mode",   "tol_root"};

}  // namespace

RunConfig parse_config(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::istringstream stream{std::string{text}};
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (!kKnownKeys.count(key)) {
            throw ConfigError("unknown key '" + key + "'");
        }
        if (kv.count(key)) {
            throw ConfigError("key '" + key + "' given more than once");
        }
        if (value.empty()) {
            throw ConfigError("key '" + key + "' has no value");
        }
        kv[key] = value;
    }

    const bool has_lambda = kv.count("lambda") > 0;
    std::string physical_present;
    for (const std::string& k : kPhysicalKeys) {
        if (kv.count(k)) {
            physical_present = k;
            break;
        }
    }
    if (has_lambda && !physical_present.empty()) {
        throw ConfigError("both parameter styles present: 'lambda' conflicts with '" +
                          physical_present + "'");
    }
    if (!has_lambda && physical_present.empty()) {
        throw ConfigError("missing parameters: give 'lambda' or the physical set "
                          "(dipole_moment, wavelength, detuning, overlap_a)");
    }

    RunConfig cfg;
    auto take = [&kv](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (has_lambda) {
        cfg.lambda = parse_double("lambda", *take("lambda"));
        if (!std::isfinite(cfg.lambda)) throw ConfigError("key 'lambda': must be finite");
    } else {
        PhysicalParams p;
        for (const char* req : {"dipole_moment", "wavelength", "detuning", "overlap_a"}) {
            if (!kv.count(req)) {
                throw ConfigError("physical style: missing required key '" +
                                  std::string{req} + "'");
            }
        }
        p.dipole_moment = parse_double("dipole_moment", *take("dipole_moment"));
        p.wavelength = parse_double("wavelength", *take("wavelength"));
        p.detuning = parse_double("detuning", *take("detuning"));
        p.overlap_a = parse_double("overlap_a", *take("overlap_a"));
        if (auto v = take("atoms_per_site")) p.atoms_per_site = parse_int("atoms_per_site", *v);
        try {
            cfg.lambda = lambda_from_physical(p).lambda;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string{"physical parameters invalid: "} + e.what());
        }
        cfg.physical = p;
    }

    for (const char* req : {"n_sites", "r1_intensity", "r2_intensity"}) {
        if (!kv.count(req)) {
            throw ConfigError("missing required key '" + std::string{req} + "'");
        }
    }
    cfg.n_sites = parse_int("n_sites", *take("n_sites"));
    if (cfg.n_sites < 1) throw ConfigError("key 'n_sites': must be >= 1");
    cfg.r1_intensity = parse_double("r1_intensity", *take("r1_intensity"));
    cfg.r2_intensity = parse_double("r2_intensity", *take("r2_intensity"));
    for (auto [key, v] : {std::pair{"r1_intensity", cfg.r1_intensity},
                          std::pair{"r2_intensity", cfg.r2_intensity}}) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw ConfigError("key '" + std::string{key} + "': must lie in [0, 1)");
        }
    }

    if (auto v = take("drive_left")) cfg.drive.e_left = parse_complex("drive_left", *v);
    if (auto v = take("drive_right")) cfg.drive.e_right = parse_complex("drive_right", *v);
    if (auto v = take("chi")) cfg.chi = parse_double("chi", *v);
    if (auto v = take("za_over_l")) {
        cfg.za_over_l = parse_double("za_over_l", *v);
        if (!(*cfg.za_over_l > 0.0 && *cfg.za_over_l < 1.0)) {
            throw ConfigError("key 'za_over_l': must lie in (0, 1)");
        }
    }
    if (auto v = take("u_min")) cfg.u_min = parse_double("u_min", *v);
    if (auto v = take("u_max")) cfg.u_max = parse_double("u_max", *v);
    if (!(cfg.u_max > cfg.u_min)) {
        throw ConfigError("key 'u_max': window must satisfy u_min < u_max");
    }
    if (auto v = take("n_u")) cfg.n_u = parse_int("n_u", *v);
    if (auto v = take("chi_min")) cfg.chi_min = parse_double("chi_min", *v);
    if (auto v = take("chi_max")) cfg.chi_max = parse_double("chi_max", *v);
    if (!(cfg.chi_max > cfg.chi_min)) {
        throw ConfigError("key 'chi_max': range must satisfy chi_min < chi_max");
    }
    if (auto v = take("n_chi")) cfg.n_chi = parse_int("n_chi", *v);
    if (auto v = take("n_chi_track")) cfg.n_chi_track = parse_int("n_chi_track", *v);
    for (auto [key, v] : {std::pair{"n_u", cfg.n_u}, std::pair{"n_chi", cfg.n_chi},
                          std::pair{"n_chi_track", cfg.n_chi_track}}) {
        if (v < 2) throw ConfigError("key '" + std::string{key} + "': must be >= 2");
    }
    if (auto v = take("samples_per_segment")) {
        cfg.samples_per_segment = parse_int("samples_per_segment", *v);
    }
    if (cfg.samples_per_segment < 2) {
        throw ConfigError("key 'samples_per_segment': must be >= 2");
    }
    if (auto v = take("mode")) {
        if (*v == "full") {
            cfg.mode = DetMode::full;
        } else if (*v == "uniform-gas" || *v == "uniform_gas") {
            cfg.mode = DetMode::uniform_gas;
        } else {
            throw ConfigError("key 'mode': expected 'full' or 'uniform-gas', got '" +
                              *v + "'");
        }
    }
    if (auto v = take("tol_root")) {
        cfg.tol_root = parse_double("tol_root", *v);
        if (!(cfg.tol_root > 0.0)) throw ConfigError("key 'tol_root': must be positive");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in{path};
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace braggcav
