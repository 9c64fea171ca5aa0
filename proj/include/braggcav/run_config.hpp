#pragma once
//
// Flat key = value configuration (# comments) for the command-line tools.
// Exactly one parameter style must be present: either the dimensionless
// site coupling `lambda`, or the physical set `dipole_moment, wavelength,
// detuning, overlap_a[, atoms_per_site]` which is converted once and echoed
// in output headers for provenance.

#include <optional>
#include <string>
#include <string_view>

#include "braggcav/cavity_network.hpp"

namespace braggcav {

/// Configuration problem: unknown key, missing key, conflicting styles or
/// an out-of-range value. Maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    // resolved dimensionless parameters
    double lambda = 0.0;
    int n_sites = 1;
    double r1_intensity = 0.0;
    double r2_intensity = 0.0;
    DriveFields drive{};
    double chi = 0.0;
    std::optional<double> za_over_l{};

    // provenance when the physical style was used
    std::optional<PhysicalParams> physical{};

    // scan ranges and resolutions
    double u_min = -0.5;
    double u_max = 0.5;
    int n_u = 600;
    double chi_min = 0.0;
    double chi_max = 2.0 * 3.14159265358979323846;
    int n_chi = 600;
    int n_chi_track = 512;   // branch-tracking resolution per 2 pi
    int samples_per_segment = 32;
    DetMode mode = DetMode::full;
    double tol_root = 1e-10;

    [[nodiscard]] CavityConfig cavity() const {
        return {r1_intensity, r2_intensity, SiteCoupling{lambda}, n_sites, chi,
                za_over_l};
    }
};

/// Parses and validates a configuration document. Every error names the
/// offending key.
RunConfig parse_config(std::string_view text);

/// Convenience wrapper: reads the file and parses it.
RunConfig load_config(const std::string& path);

}  // namespace braggcav
