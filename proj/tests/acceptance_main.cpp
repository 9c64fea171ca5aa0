// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is written out next to the check.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <vector>

#include "braggcav/resonances.hpp"
#include "test_util.hpp"

using namespace braggcav;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGammaEmpty = 0.0031991212616369353;  // ln(1/0.99)/pi

int g_failures = 0;

void report(int id, bool pass, const char* label, const std::string& detail) {
    std::printf("[%2d] %s  %s: %s\n", id, pass ? "PASS" : "FAIL", label,
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

CavityConfig worked_cavity(double chi = 0.0) {
    return {0.99, 0.99, SiteCoupling{-9e-4}, 1000, chi};
}

std::vector<double> chi_grid(int n) {
    std::vector<double> grid(n + 1);
    for (int i = 0; i <= n; ++i) grid[i] = kTwoPi * i / n;
    return grid;
}

// ---------------------------------------------------------------------------

void criterion_1_stack_reflectivity() {
    const StackCoefficients s = stack_coefficients(SiteCoupling{-9e-4}, 1000);
    const double r2 = std::norm(s.r_fwd);
    report(1, std::abs(r2 - 0.447) <= 0.005, "stack reflectivity",
           fmt("|r_fwd|^2 = %.6f (required 0.447 +/- 0.005)", r2));
}

void criterion_2_physical_conversion() {
    PhysicalParams p;
    p.dipole_moment = 2.32e-29;
    p.wavelength = 800e-9;
    p.detuning = -1e9;
    p.overlap_a = 3.5e8;
    p.atoms_per_site = 1;
    const double per_atom = lambda_from_physical(p).lambda;
    report(2, std::abs(per_atom - (-9e-7)) <= 0.2 * 9e-7, "physical conversion",
           fmt("lambda/n = %.4e (required within 20%% of -9e-7)", per_atom));
}

void criterion_3_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    const double lambdas[] = {-0.1, -0.05, -0.009, -9e-4, -1e-5,
                              1e-5, 9e-4,  0.009,  0.05,  0.1};
    const int sites[] = {1, 2, 7, 100, 1000};
    double worst = 0.0;
    for (double lam : lambdas) {
        for (int n : sites) {
            const StackCoefficients c = stack_coefficients(SiteCoupling{lam}, n);
            const StackCoefficients b =
                stack_coefficients_bruteforce(SiteCoupling{lam}, n);
            worst = std::max(worst, testutil::rel_err(b.r_fwd, c.r_fwd));
            worst = std::max(worst, testutil::rel_err(b.r_bwd, c.r_bwd));
            worst = std::max(worst, testutil::rel_err(b.t, c.t));
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(3, worst <= 1e-9 && elapsed < 1.0, "oracle equivalence",
           fmt("max relative deviation = %.2e (required <= 1e-9) in %.3f s "
               "(required < 1 s)",
               worst, elapsed));
}

void criterion_4_unitarity() {
    testutil::Rng rng{0xacce9741};
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double lam = rng.uniform(-10.0, 10.0);
        const int n = rng.uniform_int(1, 10000);
        const StackCoefficients s = stack_coefficients(SiteCoupling{lam}, n);
        worst = std::max(worst, std::abs(std::norm(s.r_fwd) + std::norm(s.t) - 1.0));
    }
    report(4, worst <= 1e-10, "unitarity over 1e4 random stacks",
           fmt("max | |r|^2 + |t|^2 - 1 | = %.2e (required <= 1e-10)", worst));
}

void criterion_5_empty_cavity() {
    const CavityConfig cfg{0.99, 0.99, SiteCoupling{0.0}, 1, 0.9};
    const FindResult found = find_resonances(cfg, 0.9, {-0.5, 1.5});
    double worst = 1e9;
    bool count_ok = found.resonances.size() == 2;
    if (count_ok) {
        worst = 0.0;
        for (int m = 0; m < 2; ++m) {
            const cplx expect{kTwoPi * m, std::log(0.99)};
            worst = std::max(worst,
                             std::abs(found.resonances[m].theta_zero - expect));
        }
    }
    const FieldAmplitudes f =
        solve_steady_state(cfg, DriveFields{1.0, 0.0}, phase_at_u(0.0));
    const double buildup = std::norm(f.e1);
    const bool pass = count_ok && worst <= 1e-9 && std::abs(buildup - 100.0) <= 0.1;
    report(5, pass, "empty-cavity analytics",
           fmt("zeros off 2*pi*m - 0.0100503i by %.2e (required <= 1e-9), "
               "buildup = %.4f (required 100 +/- 0.1)",
               worst, buildup));
}

void criterion_6_determinant_identity() {
    testutil::Rng rng{0xacce9742};
    const DriveFields drive{1.0, 0.0};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const CavityConfig cfg{rng.uniform(0.0, 0.999), rng.uniform(0.0, 0.999),
                               SiteCoupling{rng.uniform(-2.0, 2.0)},
                               rng.uniform_int(1, 500), rng.uniform(0.0, kTwoPi)};
        const RoundTripPhase phase = phase_at_u(rng.uniform(-1.5, 1.5));
        const BoundarySystem sys = boundary_system(cfg, drive, phase);
        worst = std::max(worst, testutil::rel_err(testutil::det4(sys.lhs),
                                                  round_trip_determinant(cfg, phase)));
    }
    report(6, worst <= 1e-10, "4x4 boundary determinant identity",
           fmt("max relative deviation = %.2e over 1000 random configurations "
               "(required <= 1e-10)",
               worst));
}

void criterion_7_uniform_gas() {
    const CavityConfig cfg = worked_cavity();
    const double phi = std::arg(cfg.stack().t);

    const FindResult found =
        find_resonances(cfg, 0.0, {-0.5, 0.5}, 1e-10, DetMode::uniform_gas);
    bool pass = found.resonances.size() == 1;
    double dev_u = 1e9, dev_gamma = 1e9, chi_dev = 1e9;
    if (pass) {
        const Resonance& r = found.resonances.front();
        dev_u = std::abs(r.u0 - std::remainder(-phi / std::numbers::pi, 1.0));
        dev_gamma = std::abs(r.gamma_fwhm - kGammaEmpty);
        chi_dev = 0.0;
        for (double chi : {0.7, 2.2, 4.9}) {
            const FindResult again =
                find_resonances(cfg, chi, {-0.5, 0.5}, 1e-10, DetMode::uniform_gas);
            if (again.resonances.size() != 1) {
                pass = false;
                break;
            }
            chi_dev = std::max(chi_dev, std::abs(again.resonances.front().theta_zero -
                                                 r.theta_zero));
        }
    }

    // full mode: the linewidth is modulated and dips below the empty value
    const auto grid = chi_grid(256);
    const FindResult seed = find_resonances(cfg, 0.0, {-0.5, 0.5});
    double g_lo = 1e9, g_hi = -1e9;
    if (seed.resonances.size() == 1) {
        const BranchTrack track = track_branch(cfg, grid, seed.resonances.front());
        for (const Resonance& r : track.points) {
            g_lo = std::min(g_lo, r.gamma_fwhm);
            g_hi = std::max(g_hi, r.gamma_fwhm);
        }
    }
    pass = pass && dev_u <= 1e-9 && dev_gamma <= 1e-12 && chi_dev <= 1e-12 &&
           g_lo < kGammaEmpty && g_hi > kGammaEmpty;
    report(7, pass, "uniform-gas limit",
           fmt("u0 off m - phi/pi by %.2e (<= 1e-9), gamma off empty by %.2e "
               "(<= 1e-12), z_a dependence %.2e (<= 1e-12); full-mode gamma in "
               "[%.5f, %.5f] straddles %.5f",
               dev_u, dev_gamma, chi_dev, g_lo, g_hi, kGammaEmpty));
}

void criterion_8_resonance_shift() {
    const CavityConfig cfg = worked_cavity();
    const auto grid = chi_grid(512);
    const FindResult seed = find_resonances(cfg, 0.0, {-0.5, 0.5});
    if (seed.resonances.size() != 1) {
        report(8, false, "dressed-resonance shift", "seeding failed");
        return;
    }
    const BranchTrack track = track_branch(cfg, grid, seed.resonances.front());
    const auto [lo, hi] = branch_extrema(cfg, track);
    const double excursion = hi.u0 - lo.u0;
    report(8, excursion > 50.0 * kGammaEmpty, "dressed-resonance shift",
           fmt("frequency excursion over one z_a period = %.6f FSR = %.1f "
               "empty-cavity linewidths (required > 50); recorded, band "
               "[%.6f, %.6f]",
               excursion, excursion / kGammaEmpty, lo.u0, hi.u0));
}

void criterion_9_envelopes() {
    const CavityConfig cfg = worked_cavity();
    const DriveFields drive{1.0, 0.0};
    const auto grid = chi_grid(512);
    const FindResult seed = find_resonances(cfg, 0.0, {-0.5, 0.5});
    if (seed.resonances.size() != 1) {
        report(9, false, "field envelopes", "seeding failed");
        return;
    }
    const BranchTrack track = track_branch(cfg, grid, seed.resonances.front());
    const auto [lo, hi] = branch_extrema(cfg, track);

    auto envelope_at = [&](const Resonance& r, double u) {
        const CavityConfig at{0.99, 0.99, SiteCoupling{-9e-4}, 1000, r.chi};
        return field_envelope(at, drive, phase_at_u(u), 8);
    };
    auto lattice_variation = [](const EnvelopeProfile& env) {
        double mn = 1e300, mx = 0.0;
        for (std::size_t i = 1; i + 1 < env.segments.size(); ++i) {
            mn = std::min(mn, env.segments[i].envelope_max);
            mx = std::max(mx, env.segments[i].envelope_max);
        }
        return mx / mn;
    };
    auto side_ratio = [](const EnvelopeProfile& env) {
        return env.segments.front().envelope_max / env.segments.back().envelope_max;
    };

    // low-frequency band edge: near-free penetration
    const EnvelopeProfile edge = envelope_at(lo, lo.u0);
    const double variation = lattice_variation(edge);

    // 0.074 FSR above the band edge: two atom
    // positions with opposite left/right asymmetry
    const double u_mid = lo.u0 + 0.074;
    const std::vector<Resonance> mid_hits = branch_crossings(cfg, track, u_mid);
    bool mid_ok = mid_hits.size() == 2;
    double ratio_a = 0.0, ratio_b = 0.0;
    if (mid_ok) {
        ratio_a = side_ratio(envelope_at(mid_hits[0], u_mid));
        ratio_b = side_ratio(envelope_at(mid_hits[1], u_mid));
        mid_ok = (ratio_a - 1.0) * (ratio_b - 1.0) < 0.0;
    }

    // near the upper merge point: 0.464 FSR above the edge, a valid
    // resonant envelope
    const double u_high = lo.u0 + 0.464;
    const std::vector<Resonance> high_hits = branch_crossings(cfg, track, u_high);
    bool high_ok = !high_hits.empty() && u_high < hi.u0;
    if (high_ok) {
        const EnvelopeProfile env = envelope_at(high_hits.front(), u_high);
        high_ok = env.closure_error < 1e-9 &&
                  std::isfinite(lattice_variation(env)) &&
                  env.segments.front().envelope_max > 0.0;
    }

    const bool pass = variation < 1.25 && mid_ok && high_ok;
    report(9, pass, "field envelopes",
           fmt("edge variation = %.4f (required < 1.25); edge+0.074: %zu "
               "crossings, left/right ratios %.3f and %.3f (required opposite "
               "sides of 1); edge+0.464 valid: %s",
               variation, mid_hits.size(), ratio_a, ratio_b,
               high_ok ? "yes" : "no"));
}

void criterion_10_fsr_periodicity() {
    const CavityConfig empty{0.99, 0.99, SiteCoupling{0.0}, 1, 0.0};
    const CavityConfig dressed = worked_cavity();

    double worst = 0.0;
    for (const CavityConfig* cfg : {&empty, &dressed}) {
        for (double chi : {0.0, 2.1}) {
            const FindResult found = find_resonances(*cfg, chi, {-0.5, 0.5});
            for (const Resonance& r : found.resonances) {
                Resonance shifted = r;
                shifted.theta_zero += kTwoPi;
                const Resonance re = continue_zero(*cfg, chi, shifted);
                worst = std::max(worst,
                                 std::abs(re.theta_zero - (r.theta_zero + kTwoPi)));
            }
        }
    }

    const DetMap base = scan_det_map(dressed, {-0.5, 0.5}, {0.0, kTwoPi}, 101, 33);
    const DetMap next =
        scan_det_map(dressed, {-0.5, 0.5}, {kTwoPi, 2.0 * kTwoPi}, 101, 33);
    double map_dev = 0.0;
    for (std::size_t i = 0; i < base.log10_inv_det2.size(); ++i) {
        map_dev = std::max(map_dev,
                           std::abs(base.log10_inv_det2[i] - next.log10_inv_det2[i]));
    }

    report(10, worst <= 1e-9 && map_dev <= 1e-9, "FSR and chi periodicity",
           fmt("zero reproduction at theta + 2 pi off by %.2e (required <= 1e-9); "
               "chi-period map deviation %.2e (required <= 1e-9)",
               worst, map_dev));
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_1_stack_reflectivity();
    criterion_2_physical_conversion();
    criterion_3_oracle_equivalence();
    criterion_4_unitarity();
    criterion_5_empty_cavity();
    criterion_6_determinant_identity();
    criterion_7_uniform_gas();
    criterion_8_resonance_shift();
    criterion_9_envelopes();
    criterion_10_fsr_periodicity();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/10 criteria passed in %.2f s\n", 10 - g_failures, elapsed);
    return g_failures == 0 ? 0 : 1;
}
