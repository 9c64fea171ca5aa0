#pragma once
//
// Complex zeros of the cavity determinant: dressed resonance positions and
// linewidths, branch continuation in the atom phase, and |D|^-2 maps.
//
// Linewidth convention: gamma_fwhm = 2 |Im theta_0| / (2 pi), the full width
// at half maximum of |D|^-2 along real frequency, in free-spectral-range
// units. The empty cavity then gives gamma = ln(1/(r1 r2)) / pi, matching
// the usual finesse formula.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "braggcav/cavity_network.hpp"

namespace braggcav {

struct Resonance {
    cplx theta_zero{};       // determinant zero, Im <= 0
    double u0 = 0.0;         // Re(theta_zero) / 2 pi
    double gamma_fwhm = 0.0; // 2 |Im theta_zero| / 2 pi
    double chi = 0.0;        // atom phase at which it was found
    int branch_id = 0;
};

struct DetMap {
    std::vector<double> u_grid;
    std::vector<double> chi_grid;
    std::vector<double> log10_inv_det2;  // row-major, chi outer, u inner

    [[nodiscard]] double at(std::size_t i_chi, std::size_t i_u) const {
        return log10_inv_det2[i_chi * u_grid.size() + i_u];
    }
};

/// log10(1/|D|^2) on a real-frequency grid.
DetMap scan_det_map(const CavityConfig& cfg, std::pair<double, double> u_range,
                    std::pair<double, double> chi_range, int n_u, int n_chi,
                    DetMode mode = DetMode::full);

struct FindResult {
    std::vector<Resonance> resonances;   // deduplicated, sorted by u0
    std::vector<cplx> failed_seeds;      // seeds that did not converge
};

/// Seeds from local minima of |D| on a real-u grid inside the window, then
/// polishes each seed with a damped Newton iteration in complex theta
/// (central finite-difference derivative). The window may span a few FSR.
FindResult find_resonances(const CavityConfig& cfg, double chi,
                           std::pair<double, double> u_window,
                           double tol_root = 1e-10, DetMode mode = DetMode::full);

struct TrackEvent {
    enum class Kind { collision, lost_lock };
    Kind kind = Kind::lost_lock;
    std::size_t index = 0;  // position in the chi path
    double chi = 0.0;
    int branch_a = -1;
    int branch_b = -1;
};

struct BranchTrack {
    std::vector<Resonance> points;   // one per chi, continued without wrapping
    std::vector<TrackEvent> events;
};

/// Continuation of one zero along a path of atom phases. Each step polishes
/// from the previous zero; consecutive steps must be small enough that the
/// zero moves by less than a quarter FSR. Loss of lock ends the track with
/// an event rather than emitting unreliable points.
BranchTrack track_branch(const CavityConfig& cfg, std::span<const double> chi_path,
                         const Resonance& seed, DetMode mode = DetMode::full,
                         double tol_root = 1e-10);

struct BranchFamily {
    std::vector<BranchTrack> branches;
    std::vector<TrackEvent> collisions;  // pairs of tracked zeros within 1e-6
};

/// Tracks several seeds along the same path and reports branch collisions
/// (two tracked zeros closer than 1e-6 in theta) instead of merging them.
BranchFamily track_branches(const CavityConfig& cfg, std::span<const double> chi_path,
                            std::span<const Resonance> seeds,
                            DetMode mode = DetMode::full, double tol_root = 1e-10);

/// Analytic zero of the empty-cavity determinant:
/// theta = 2 pi m - i ln(1/(r1 r2)). Used as oracle and Newton seed.
Resonance empty_cavity_resonance(double r1_intensity, double r2_intensity,
                                 int order_m);

/// One zero continued to a nearby atom phase by polishing from a known
/// zero. Throws NumericalError when the polish does not converge.
Resonance continue_zero(const CavityConfig& cfg, double chi, const Resonance& from,
                        DetMode mode = DetMode::full, double tol_root = 1e-10);

/// Points where the tracked branch crosses u0 == u_target, refined by
/// bisection between adjacent track samples; sorted by chi.
std::vector<Resonance> branch_crossings(const CavityConfig& cfg,
                                        const BranchTrack& track, double u_target,
                                        DetMode mode = DetMode::full,
                                        double tol_root = 1e-10);

/// Golden-section refinement of the branch's lowest and highest u0.
std::pair<Resonance, Resonance> branch_extrema(const CavityConfig& cfg,
                                               const BranchTrack& track,
                                               DetMode mode = DetMode::full,
                                               double tol_root = 1e-10);

}  // namespace braggcav
