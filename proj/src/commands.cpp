#include "braggcav/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "braggcav/resonances.hpp"
#include "braggcav/table_writer.hpp"

namespace braggcav {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

const char* mode_name(DetMode mode) {
    return mode == DetMode::full ? "full" : "uniform-gas";
}

void common_header(TableWriter& w, const RunConfig& rc) {
    w.header("lambda", rc.lambda);
    w.header("n_sites", static_cast<double>(rc.n_sites));
    w.header("r1_intensity", rc.r1_intensity);
    w.header("r2_intensity", rc.r2_intensity);
    w.header("chi", rc.chi);
    w.header("drive_left", fmt_complex(rc.drive.e_left));
    w.header("drive_right", fmt_complex(rc.drive.e_right));
    w.header("mode", mode_name(rc.mode));
    if (rc.za_over_l) w.header("za_over_l", *rc.za_over_l);
    if (rc.physical) {
        const PhysicalParams& p = *rc.physical;
        w.header("dipole_moment", p.dipole_moment);
        w.header("wavelength", p.wavelength);
        w.header("detuning", p.detuning);
        w.header("overlap_a", p.overlap_a);
        w.header("atoms_per_site", static_cast<double>(p.atoms_per_site));
        w.header("lambda_per_atom", rc.lambda / p.atoms_per_site);
    }
}

/// chi grid over one closed atom-phase period [0, 2 pi].
std::vector<double> tracking_grid(int n_chi_track) {
    std::vector<double> grid(n_chi_track + 1);
    for (int i = 0; i <= n_chi_track; ++i) {
        grid[i] = kTwoPi * i / n_chi_track;
    }
    return grid;
}

/// Tracks the branch seeded from the lowest-u0 zero at chi = 0 inside the
/// configured u window, over one full atom-phase period.
BranchTrack principal_branch(const RunConfig& rc, const CavityConfig& cavity) {
    const auto grid = tracking_grid(rc.n_chi_track);
    const FindResult at_start = find_resonances(cavity, grid.front(),
                                                {rc.u_min, rc.u_max}, rc.tol_root,
                                                rc.mode);
    if (at_start.resonances.empty()) {
        throw NumericalError("no resonance inside the configured u window");
    }
    BranchTrack track = track_branch(cavity, grid, at_start.resonances.front(),
                                     rc.mode, rc.tol_root);
    if (track.points.size() != grid.size()) {
        throw NumericalError("branch tracking lost lock before completing the period");
    }
    return track;
}

}  // namespace

std::string cmd_coeffs(const RunConfig& rc) {
    const SiteCoupling c{rc.lambda};
    const StackCoefficients closed = stack_coefficients(c, rc.n_sites);
    const StackCoefficients brute = stack_coefficients_bruteforce(c, rc.n_sites);

    TableWriter w{"coeffs"};
    common_header(w, rc);
    double max_dev = 0.0;
    const std::pair<cplx, cplx> pairs[] = {{closed.r_fwd, brute.r_fwd},
                                           {closed.r_bwd, brute.r_bwd},
                                           {closed.t, brute.t}};
    for (const auto& [cf, bf] : pairs) max_dev = std::max(max_dev, std::abs(cf - bf));
    w.header("max_deviation", max_dev);
    w.columns({"coefficient", "closed_re", "closed_im", "closed_mag2", "brute_re",
               "brute_im", "brute_mag2", "deviation"});
    const char* names[] = {"r_fwd", "r_bwd", "t"};
    for (int i = 0; i < 3; ++i) {
        const auto& [cf, bf] = pairs[i];
        w.row(names[i], {cf.real(), cf.imag(), std::norm(cf), bf.real(), bf.imag(),
                         std::norm(bf), std::abs(cf - bf)});
    }
    return w.str();
}

std::string cmd_spacing(const RunConfig& rc) {
    const double dk = std::numbers::pi + 2.0 * std::atan(rc.lambda);
    TableWriter w{"spacing"};
    common_header(w, rc);
    if (rc.physical) {
        const double k = kTwoPi / rc.physical->wavelength;
        w.header("d_meters", lattice_spacing(SiteCoupling{rc.lambda}, k));
    }
    w.columns({"d_over_lambda", "d_times_k"});
    w.row({dk / kTwoPi, dk});
    return w.str();
}

std::string cmd_det_scan(const RunConfig& rc) {
    const CavityConfig cavity = rc.cavity();
    const DetMap map = scan_det_map(cavity, {rc.u_min, rc.u_max},
                                    {rc.chi_min, rc.chi_max}, rc.n_u, rc.n_chi,
                                    rc.mode);
    TableWriter w{"det-scan"};
    common_header(w, rc);
    w.header("n_u", static_cast<double>(rc.n_u));
    w.header("n_chi", static_cast<double>(rc.n_chi));
    w.columns({"u", "za_over_lambda", "log10_inv_det2"});
    for (std::size_t j = 0; j < map.chi_grid.size(); ++j) {
        for (std::size_t i = 0; i < map.u_grid.size(); ++i) {
            w.row({map.u_grid[i], map.chi_grid[j] / kFourPi, map.at(j, i)});
        }
    }
    return w.str();
}

std::string cmd_linewidth_inset(const RunConfig& rc) {
    const CavityConfig cavity = rc.cavity();

    RunConfig full_rc = rc;
    full_rc.mode = DetMode::full;
    const BranchTrack track = principal_branch(full_rc, cavity);
    const auto [lo, hi] = branch_extrema(cavity, track, DetMode::full, rc.tol_root);

    // the uniform-gas linewidth is independent of the atom phase
    const FindResult uniform = find_resonances(cavity, 0.0, {rc.u_min, rc.u_max},
                                               rc.tol_root, DetMode::uniform_gas);
    if (uniform.resonances.empty()) {
        throw NumericalError("no uniform-gas resonance inside the configured u window");
    }
    const double gamma_uniform = uniform.resonances.front().gamma_fwhm;

    TableWriter w{"linewidth-inset"};
    common_header(w, rc);
    w.header("u0_min", lo.u0);
    w.header("u0_max", hi.u0);
    w.header("u0_excursion", hi.u0 - lo.u0);
    w.header("gamma_uniform", gamma_uniform);
    w.columns({"za_over_lambda", "gamma_full", "gamma_uniform"});
    for (const Resonance& r : track.points) {
        w.row({r.chi / kFourPi, r.gamma_fwhm, gamma_uniform});
    }
    return w.str();
}

std::string cmd_envelope(const RunConfig& rc, double u, int branch) {
    const CavityConfig cavity = rc.cavity();
    const BranchTrack track = principal_branch(rc, cavity);
    const std::vector<Resonance> hits =
        branch_crossings(cavity, track, u, rc.mode, rc.tol_root);
    if (hits.empty()) {
        throw NumericalError("the tracked branch never reaches u = " + fmt_g12(u) +
                             " inside the configured window");
    }
    if (branch < 0 || branch >= static_cast<int>(hits.size())) {
        throw NumericalError("branch selector " + std::to_string(branch) +
                             " out of range: " + std::to_string(hits.size()) +
                             " crossing(s) found");
    }
    const Resonance& hit = hits[branch];

    CavityConfig at_hit{rc.r1_intensity, rc.r2_intensity, SiteCoupling{rc.lambda},
                        rc.n_sites, hit.chi, rc.za_over_l};
    const EnvelopeProfile env =
        field_envelope(at_hit, rc.drive, phase_at_u(u), rc.samples_per_segment);

    TableWriter w{"envelope"};
    common_header(w, rc);
    w.header("u", u);
    w.header("branch", static_cast<double>(branch));
    w.header("crossings_found", static_cast<double>(hits.size()));
    w.header("chi_resonant", hit.chi);
    w.header("za_over_lambda", hit.chi / kFourPi);
    w.header("gamma_fwhm", hit.gamma_fwhm);
    w.header("closure_error", env.closure_error);
    w.columns({"z_over_lambda", "envelope_max", "envelope_min", "forward_mag",
               "backward_mag"});
    for (std::size_t i = 0; i < env.z_samples.size(); ++i) {
        w.row({env.z_samples[i], env.envelope_max_curve[i], env.envelope_min_curve[i],
               env.forward_mag[i], env.backward_mag[i]});
    }
    return w.str();
}

std::string cmd_resonances(const RunConfig& rc) {
    const CavityConfig cavity = rc.cavity();
    const FindResult found = find_resonances(cavity, rc.chi, {rc.u_min, rc.u_max},
                                             rc.tol_root, rc.mode);
    TableWriter w{"resonances"};
    common_header(w, rc);
    w.header("u_min", rc.u_min);
    w.header("u_max", rc.u_max);
    w.header("n_found", static_cast<double>(found.resonances.size()));
    w.header("n_failed_seeds", static_cast<double>(found.failed_seeds.size()));
    w.columns({"branch_id", "u0", "gamma_fwhm", "theta_re", "theta_im", "residual"});
    for (const Resonance& r : found.resonances) {
        const double residual = std::abs(
            cavity_determinant(cavity, RoundTripPhase{r.theta_zero}, r.chi, rc.mode));
        w.row({static_cast<double>(r.branch_id), r.u0, r.gamma_fwhm,
               r.theta_zero.real(), r.theta_zero.imag(), residual});
    }
    return w.str();
}

}  // namespace braggcav
