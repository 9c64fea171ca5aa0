#include "braggcav/resonances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace braggcav {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNewtonStep = 1e-7;       // finite-difference step, rad
constexpr double kStepTol = 1e-12;         // |dtheta| convergence threshold
constexpr int kMaxNewtonIter = 100;
constexpr double kSeedImag = -0.003;       // start inside the decay half-plane
constexpr double kDedupRadius = 1e-8;
constexpr double kCollisionRadius = 1e-6;

double det_scale(const CavityConfig& cfg) {
    const StackCoefficients s = cfg.stack();
    const double r1 = cfg.r1_amplitude();
    const double r2 = cfg.r2_amplitude();
    return 1.0 + r1 * std::abs(s.r_fwd) + r2 * std::abs(s.r_bwd) +
           r1 * r2 * std::abs(s.t * s.t - s.r_fwd * s.r_bwd);
}

std::optional<cplx> polish_zero(const CavityConfig& cfg, double chi, DetMode mode,
                                cplx theta) {
    auto det = [&](cplx th) {
        return cavity_determinant(cfg, RoundTripPhase{th}, chi, mode);
    };
    for (int iter = 0; iter < kMaxNewtonIter; ++iter) {
        const cplx d0 = det(theta);
        const cplx deriv =
            (det(theta + kNewtonStep) - det(theta - kNewtonStep)) / (2.0 * kNewtonStep);
        if (deriv == cplx{0.0, 0.0}) return std::nullopt;
        const cplx full_step = -d0 / deriv;
        if (!std::isfinite(full_step.real()) || !std::isfinite(full_step.imag())) {
            return std::nullopt;
        }
        // damp: accept the longest step that does not increase |D|
        double damping = 1.0;
        cplx next = theta + full_step;
        for (int halving = 0; halving < 8 && std::abs(det(next)) > std::abs(d0);
             ++halving) {
            damping *= 0.5;
            next = theta + damping * full_step;
        }
        theta = next;
        if (std::abs(damping * full_step) < kStepTol) return theta;
    }
    return std::nullopt;
}

Resonance make_resonance(cplx theta, double chi, int branch_id) {
    return {theta, theta.real() / kTwoPi, 2.0 * std::abs(theta.imag()) / kTwoPi, chi,
            branch_id};
}

}  // namespace

DetMap scan_det_map(const CavityConfig& cfg, std::pair<double, double> u_range,
                    std::pair<double, double> chi_range, int n_u, int n_chi,
                    DetMode mode) {
    if (n_u < 2 || n_chi < 2) {
        throw std::invalid_argument("det-map grids need at least 2 points per axis");
    }
    if (!(u_range.second > u_range.first) || !(chi_range.second > chi_range.first)) {
        throw std::invalid_argument("det-map ranges must be increasing");
    }
    DetMap map;
    map.u_grid.resize(n_u);
    map.chi_grid.resize(n_chi);
    for (int i = 0; i < n_u; ++i) {
        map.u_grid[i] =
            u_range.first + (u_range.second - u_range.first) * i / (n_u - 1);
    }
    for (int j = 0; j < n_chi; ++j) {
        map.chi_grid[j] =
            chi_range.first + (chi_range.second - chi_range.first) * j / (n_chi - 1);
    }
    map.log10_inv_det2.reserve(static_cast<std::size_t>(n_u) * n_chi);
    for (int j = 0; j < n_chi; ++j) {
        for (int i = 0; i < n_u; ++i) {
            const cplx d =
                cavity_determinant(cfg, phase_at_u(map.u_grid[i]), map.chi_grid[j], mode);
            map.log10_inv_det2.push_back(-2.0 * std::log10(std::abs(d)));
        }
    }
    return map;
}

FindResult find_resonances(const CavityConfig& cfg, double chi,
                           std::pair<double, double> u_window, double tol_root,
                           DetMode mode) {
    const double width = u_window.second - u_window.first;
    if (!(width > 0.0) || width > 16.0) {
        throw std::invalid_argument("u_window must be increasing and span at most a few FSR");
    }
    if (!(tol_root > 0.0)) {
        throw std::invalid_argument("tol_root must be positive");
    }

    const int n_grid = std::max(33, static_cast<int>(std::ceil(256.0 * width)) + 1);
    std::vector<double> mag(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        const double u = u_window.first + width * i / (n_grid - 1);
        mag[i] = std::abs(cavity_determinant(cfg, phase_at_u(u), chi, mode));
    }

    std::vector<double> seeds_u;
    for (int i = 0; i < n_grid; ++i) {
        const bool left_ok = i == 0 || mag[i] < mag[i - 1];
        const bool right_ok = i == n_grid - 1 || mag[i] < mag[i + 1];
        if (left_ok && right_ok) {
            seeds_u.push_back(u_window.first + width * i / (n_grid - 1));
        }
    }

    FindResult out;
    const double scale = det_scale(cfg);
    std::vector<cplx> zeros;
    for (double su : seeds_u) {
        const cplx seed{kTwoPi * su, kSeedImag};
        const std::optional<cplx> polished = polish_zero(cfg, chi, mode, seed);
        if (!polished) {
            out.failed_seeds.push_back(seed);
            continue;
        }
        const cplx theta = *polished;
        const double residual =
            std::abs(cavity_determinant(cfg, RoundTripPhase{theta}, chi, mode));
        if (residual > tol_root * scale || theta.imag() > 0.0) {
            out.failed_seeds.push_back(seed);
            continue;
        }
        const double u0 = theta.real() / kTwoPi;
        if (u0 < u_window.first - 1e-9 || u0 > u_window.second + 1e-9) continue;
        const bool duplicate = std::any_of(zeros.begin(), zeros.end(), [&](cplx z) {
            return std::abs(z - theta) < kDedupRadius;
        });
        if (!duplicate) zeros.push_back(theta);
    }

    std::sort(zeros.begin(), zeros.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        out.resonances.push_back(make_resonance(zeros[i], chi, static_cast<int>(i)));
    }
    return out;
}

BranchTrack track_branch(const CavityConfig& cfg, std::span<const double> chi_path,
                         const Resonance& seed, DetMode mode, double tol_root) {
    BranchTrack track;
    const double scale = det_scale(cfg);
    cplx theta = seed.theta_zero;
    for (std::size_t i = 0; i < chi_path.size(); ++i) {
        const double chi = chi_path[i];
        const std::optional<cplx> polished = polish_zero(cfg, chi, mode, theta);
        bool ok = polished.has_value();
        if (ok) {
            const double residual =
                std::abs(cavity_determinant(cfg, RoundTripPhase{*polished}, chi, mode));
            ok = residual <= tol_root * scale && polished->imag() <= 0.0;
        }
        if (!ok) {
            track.events.push_back(
                {TrackEvent::Kind::lost_lock, i, chi, seed.branch_id, -1});
            break;
        }
        theta = *polished;
        track.points.push_back(make_resonance(theta, chi, seed.branch_id));
    }
    return track;
}

BranchFamily track_branches(const CavityConfig& cfg, std::span<const double> chi_path,
                            std::span<const Resonance> seeds, DetMode mode,
                            double tol_root) {
    BranchFamily family;
    for (const Resonance& seed : seeds) {
        family.branches.push_back(track_branch(cfg, chi_path, seed, mode, tol_root));
    }
    // report pairs of tracked zeros that come within the collision radius;
    // one event per pair per contiguous contact region
    for (std::size_t a = 0; a < family.branches.size(); ++a) {
        for (std::size_t b = a + 1; b < family.branches.size(); ++b) {
            const auto& pa = family.branches[a].points;
            const auto& pb = family.branches[b].points;
            const std::size_t n = std::min(pa.size(), pb.size());
            bool in_contact = false;
            for (std::size_t i = 0; i < n; ++i) {
                const bool close =
                    std::abs(pa[i].theta_zero - pb[i].theta_zero) < kCollisionRadius;
                if (close && !in_contact) {
                    family.collisions.push_back({TrackEvent::Kind::collision, i,
                                                 chi_path[i], pa[i].branch_id,
                                                 pb[i].branch_id});
                }
                in_contact = close;
            }
        }
    }
    return family;
}

Resonance continue_zero(const CavityConfig& cfg, double chi, const Resonance& from,
                        DetMode mode, double tol_root) {
    const std::optional<cplx> polished = polish_zero(cfg, chi, mode, from.theta_zero);
    if (!polished) {
        throw NumericalError("zero continuation lost lock at chi = " +
                             std::to_string(chi));
    }
    const double residual =
        std::abs(cavity_determinant(cfg, RoundTripPhase{*polished}, chi, mode));
    if (residual > tol_root * det_scale(cfg) || polished->imag() > 0.0) {
        throw NumericalError("zero continuation produced an invalid zero at chi = " +
                             std::to_string(chi));
    }
    return make_resonance(*polished, chi, from.branch_id);
}

std::vector<Resonance> branch_crossings(const CavityConfig& cfg,
                                        const BranchTrack& track, double u_target,
                                        DetMode mode, double tol_root) {
    std::vector<Resonance> out;
    const auto& pts = track.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double fa = pts[i].u0 - u_target;
        const double fb = pts[i + 1].u0 - u_target;
        if (fa == 0.0) {
            out.push_back(pts[i]);
            continue;
        }
        if (fa * fb >= 0.0) continue;
        double lo = pts[i].chi;
        double hi = pts[i + 1].chi;
        Resonance from = pts[i];
        double f_lo = fa;
        while (hi - lo > 1e-13) {
            const double mid = 0.5 * (lo + hi);
            const Resonance r = continue_zero(cfg, mid, from, mode, tol_root);
            from = r;
            if ((r.u0 - u_target > 0.0) == (f_lo > 0.0)) {
                lo = mid;
                f_lo = r.u0 - u_target;
            } else {
                hi = mid;
            }
        }
        out.push_back(continue_zero(cfg, 0.5 * (lo + hi), from, mode, tol_root));
    }
    if (!pts.empty() && pts.back().u0 == u_target) out.push_back(pts.back());
    return out;
}

namespace {

Resonance refine_extremum(const CavityConfig& cfg, const BranchTrack& track,
                          DetMode mode, double tol_root, bool minimum) {
    const auto& pts = track.points;
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const bool better = minimum ? pts[i].u0 < pts[best].u0 : pts[i].u0 > pts[best].u0;
        if (better) best = i;
    }
    double lo = pts[best > 0 ? best - 1 : 0].chi;
    double hi = pts[std::min(best + 1, pts.size() - 1)].chi;
    Resonance from = pts[best];
    auto value = [&](double chi) {
        from = continue_zero(cfg, chi, from, mode, tol_root);
        return minimum ? from.u0 : -from.u0;
    };
    constexpr double kGolden = 0.6180339887498949;
    double c = hi - kGolden * (hi - lo);
    double d = lo + kGolden * (hi - lo);
    double fc = value(c);
    double fd = value(d);
    while (hi - lo > 1e-12) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kGolden * (hi - lo);
            fc = value(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kGolden * (hi - lo);
            fd = value(d);
        }
    }
    return continue_zero(cfg, 0.5 * (lo + hi), from, mode, tol_root);
}

}  // namespace

std::pair<Resonance, Resonance> branch_extrema(const CavityConfig& cfg,
                                               const BranchTrack& track,
                                               DetMode mode, double tol_root) {
    if (track.points.size() < 3) {
        throw NumericalError("branch too short to locate extrema");
    }
    return {refine_extremum(cfg, track, mode, tol_root, true),
            refine_extremum(cfg, track, mode, tol_root, false)};
}

Resonance empty_cavity_resonance(double r1_intensity, double r2_intensity,
                                 int order_m) {
    if (!(r1_intensity >= 0.0 && r1_intensity <= 1.0) ||
        !(r2_intensity >= 0.0 && r2_intensity <= 1.0)) {
        throw std::invalid_argument("mirror intensities must lie in [0, 1]");
    }
    const double product = std::sqrt(r1_intensity) * std::sqrt(r2_intensity);
    if (product == 0.0) {
        throw std::invalid_argument("empty-cavity resonance needs reflective mirrors");
    }
    const cplx theta{kTwoPi * order_m, std::log(product)};
    return make_resonance(theta, 0.0, order_m);
}

}  // namespace braggcav
