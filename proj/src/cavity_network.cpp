#include "braggcav/cavity_network.hpp"

#include <cmath>
#include <numbers>

namespace braggcav {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

/// chi continued to complex frequency: held at its real value unless the
/// config carries za_over_l, in which case the imaginary part of theta is
/// scaled down by z_a / L.
cplx effective_chi(const CavityConfig& cfg, RoundTripPhase phase, double chi) {
    if (cfg.za_over_l && phase.theta.imag() != 0.0) {
        return cplx{chi, phase.theta.imag() * (*cfg.za_over_l)};
    }
    return cplx{chi, 0.0};
}

struct ReducedSystem {
    cplx a;       // r1 e^{i chi}
    cplx b;       // r2 e^{i (theta - chi)}
    cplx c1, c2;  // driven inhomogeneities
    StackCoefficients s;
};

ReducedSystem reduced_system(const CavityConfig& cfg, const DriveFields& drive,
                             RoundTripPhase phase, double chi) {
    if (!std::isfinite(std::abs(drive.e_left)) ||
        !std::isfinite(std::abs(drive.e_right))) {
        throw std::invalid_argument("drive amplitudes must be finite");
    }
    const cplx xc = effective_chi(cfg, phase, chi);
    ReducedSystem r;
    r.s = cfg.stack();
    r.a = cfg.r1_amplitude() * std::exp(kI * xc);
    r.b = cfg.r2_amplitude() * std::exp(kI * (phase.theta - xc));
    r.c1 = cfg.t1_amplitude() * std::exp(kI * (xc / 2.0)) * drive.e_left;
    r.c2 = cfg.t2_amplitude() * std::exp(kI * ((phase.theta - xc) / 2.0)) * drive.e_right;
    return r;
}

cplx determinant_of(const ReducedSystem& r) {
    return (1.0 - r.a * r.s.r_fwd) * (1.0 - r.b * r.s.r_bwd) - r.a * r.b * r.s.t * r.s.t;
}

double determinant_scale(const ReducedSystem& r) {
    return 1.0 + std::abs(r.a * r.s.r_fwd) + std::abs(r.b * r.s.r_bwd) +
           std::abs(r.a * r.b * r.s.t * r.s.t);
}

}  // namespace

CavityConfig::CavityConfig(double r1i, double r2i, SiteCoupling c, int sites,
                           double chi, std::optional<double> za_l)
    : r1_intensity(r1i),
      r2_intensity(r2i),
      coupling(c),
      n_sites(sites),
      atom_phase_chi(wrap_two_pi(chi)),
      za_over_l(za_l) {
    if (!(r1i >= 0.0 && r1i < 1.0) || !(r2i >= 0.0 && r2i < 1.0)) {
        throw std::invalid_argument("mirror intensities must lie in [0, 1)");
    }
    if (sites < 1) {
        throw std::invalid_argument("n_sites must be >= 1");
    }
    if (!std::isfinite(c.lambda)) {
        throw std::invalid_argument("site coupling lambda must be finite");
    }
    if (!std::isfinite(chi)) {
        throw std::invalid_argument("atom phase chi must be finite");
    }
    if (za_l && !(*za_l > 0.0 && *za_l < 1.0)) {
        throw std::invalid_argument("za_over_l must lie in (0, 1)");
    }
}

double CavityConfig::r1_amplitude() const { return std::sqrt(r1_intensity); }
double CavityConfig::r2_amplitude() const { return std::sqrt(r2_intensity); }
cplx CavityConfig::t1_amplitude() const { return kI * std::sqrt(1.0 - r1_intensity); }
cplx CavityConfig::t2_amplitude() const { return kI * std::sqrt(1.0 - r2_intensity); }
StackCoefficients CavityConfig::stack() const {
    return stack_coefficients(coupling, n_sites);
}

double RoundTripPhase::u() const { return theta.real() / kTwoPi; }

RoundTripPhase phase_at_u(double u) { return {cplx{kTwoPi * u, 0.0}}; }

cplx round_trip_determinant(const CavityConfig& cfg, RoundTripPhase phase) {
    return cavity_determinant(cfg, phase, cfg.atom_phase_chi, DetMode::full);
}

cplx uniform_gas_determinant(const CavityConfig& cfg, RoundTripPhase phase) {
    return cavity_determinant(cfg, phase, cfg.atom_phase_chi, DetMode::uniform_gas);
}

cplx cavity_determinant(const CavityConfig& cfg, RoundTripPhase phase, double chi,
                        DetMode mode) {
    const StackCoefficients s = cfg.stack();
    if (mode == DetMode::uniform_gas) {
        const double phi = std::arg(s.t);
        return 1.0 - cfg.r1_amplitude() * cfg.r2_amplitude() *
                         std::exp(kI * (phase.theta + 2.0 * phi));
    }
    const cplx xc = effective_chi(cfg, phase, chi);
    const cplx cross = s.t * s.t - s.r_fwd * s.r_bwd;
    return 1.0 - cfg.r2_amplitude() * s.r_bwd * std::exp(kI * (phase.theta - xc)) -
           cfg.r1_amplitude() * s.r_fwd * std::exp(kI * xc) -
           cfg.r1_amplitude() * cfg.r2_amplitude() * cross * std::exp(kI * phase.theta);
}

BoundarySystem boundary_system(const CavityConfig& cfg, const DriveFields& drive,
                               RoundTripPhase phase) {
    const ReducedSystem r = reduced_system(cfg, drive, phase, cfg.atom_phase_chi);
    BoundarySystem sys;
    // E1 - a E3 = c1
    sys.lhs[0] = {1.0, 0.0, -r.a, 0.0};
    sys.rhs[0] = r.c1;
    // E2 - b E4 = c2
    sys.lhs[1] = {0.0, 1.0, 0.0, -r.b};
    sys.rhs[1] = r.c2;
    // -r_fwd E1 - t E2 + E3 = 0
    sys.lhs[2] = {-r.s.r_fwd, -r.s.t, 1.0, 0.0};
    sys.rhs[2] = 0.0;
    // -t E1 - r_bwd E2 + E4 = 0
    sys.lhs[3] = {-r.s.t, -r.s.r_bwd, 0.0, 1.0};
    sys.rhs[3] = 0.0;
    return sys;
}

FieldAmplitudes solve_steady_state(const CavityConfig& cfg, const DriveFields& drive,
                                   RoundTripPhase phase) {
    const ReducedSystem r = reduced_system(cfg, drive, phase, cfg.atom_phase_chi);
    const cplx det = determinant_of(r);
    if (std::abs(det) < 1e-13 * determinant_scale(r)) {
        throw NumericalError("steady state is degenerate: |D| below 1e-13 * scale");
    }
    FieldAmplitudes f;
    f.e1 = (r.c1 * (1.0 - r.b * r.s.r_bwd) + r.c2 * r.a * r.s.t) / det;
    f.e2 = (r.c2 * (1.0 - r.a * r.s.r_fwd) + r.c1 * r.b * r.s.t) / det;
    f.e3 = r.s.r_fwd * f.e1 + r.s.t * f.e2;
    f.e4 = r.s.t * f.e1 + r.s.r_bwd * f.e2;
    return f;
}

EnvelopeProfile field_envelope(const CavityConfig& cfg, const DriveFields& drive,
                               RoundTripPhase phase, int samples_per_segment,
                               double free_region_span) {
    if (samples_per_segment < 2) {
        throw std::invalid_argument("samples_per_segment must be >= 2");
    }
    if (!(free_region_span > 0.0)) {
        throw std::invalid_argument("free_region_span must be positive");
    }

    EnvelopeProfile env;
    env.amplitudes = solve_steady_state(cfg, drive, phase);

    const TransferMatrix site = site_transfer_matrix(cfg.coupling);
    const double kd = std::numbers::pi + 2.0 * std::atan(cfg.coupling.lambda);
    const TransferMatrix hop = propagation_matrix(kd);
    const double d_lambda = kd / kTwoPi;  // lattice period in wavelengths

    env.lattice_start = 0.0;
    env.lattice_end = d_lambda * (cfg.n_sites - 1);

    auto push_segment = [&env](double z0, double z1, cplx f, cplx b) {
        env.segments.push_back({z0, z1, f, b, std::abs(f) + std::abs(b),
                                std::abs(std::abs(f) - std::abs(b))});
    };

    // left free region, amplitudes referenced at its own start
    {
        const cplx shift = std::polar(1.0, -kTwoPi * free_region_span);
        push_segment(-free_region_span, 0.0, env.amplitudes.e1 * shift,
                     env.amplitudes.e3 / shift);
    }

    cplx f = env.amplitudes.e1;
    cplx b = env.amplitudes.e3;
    for (int l = 0; l < cfg.n_sites; ++l) {
        const cplx f_next = site.m11 * f + site.m12 * b;
        const cplx b_next = site.m21 * f + site.m22 * b;
        f = f_next;
        b = b_next;
        const double z_site = d_lambda * l;
        env.site_fields.push_back({z_site, f + b});
        if (l + 1 < cfg.n_sites) {
            push_segment(z_site, z_site + d_lambda, f, b);
            const cplx fwd = f * hop.m11;
            const cplx bwd = b * hop.m22;
            f = fwd;
            b = bwd;
        }
    }

    // rightmost amplitudes must reproduce (E4, E2) re-referenced to the
    // stack's end
    {
        const double end_phase = kd * (cfg.n_sites - 1);
        const cplx f_expect = env.amplitudes.e4 * std::polar(1.0, end_phase);
        const cplx b_expect = env.amplitudes.e2 * std::polar(1.0, -end_phase);
        const double scale = std::max({std::abs(f_expect), std::abs(b_expect), 1e-300});
        env.closure_error =
            std::max(std::abs(f - f_expect), std::abs(b - b_expect)) / scale;
    }

    push_segment(env.lattice_end, env.lattice_end + free_region_span, f, b);

    // sampled curves; the final segment also carries its right endpoint
    for (std::size_t si = 0; si < env.segments.size(); ++si) {
        const EnvelopeSegment& seg = env.segments[si];
        const bool last = si + 1 == env.segments.size();
        const int n = samples_per_segment;
        for (int i = 0; i < n + (last ? 1 : 0); ++i) {
            const double z = seg.z_start + (seg.z_end - seg.z_start) * i / n;
            const double ph = kTwoPi * (z - seg.z_start);
            const cplx field = seg.forward * std::polar(1.0, ph) +
                               seg.backward * std::polar(1.0, -ph);
            env.z_samples.push_back(z);
            env.field_samples.push_back(field);
            env.envelope_max_curve.push_back(seg.envelope_max);
            env.envelope_min_curve.push_back(seg.envelope_min);
            env.forward_mag.push_back(std::abs(seg.forward));
            env.backward_mag.push_back(std::abs(seg.backward));
        }
    }
    return env;
}

PotentialProfile dipole_potential(const EnvelopeProfile& env, SiteCoupling c) {
    if (!std::isfinite(c.lambda)) {
        throw std::invalid_argument("site coupling lambda must be finite");
    }
    const double sign = c.lambda > 0.0 ? 1.0 : (c.lambda < 0.0 ? -1.0 : 0.0);
    PotentialProfile pot;
    pot.z = env.z_samples;
    pot.v.reserve(env.field_samples.size());
    for (const cplx& field : env.field_samples) {
        pot.v.push_back(sign * std::norm(field));
    }
    pot.site_z.reserve(env.site_fields.size());
    pot.site_v.reserve(env.site_fields.size());
    for (const SiteField& s : env.site_fields) {
        pot.site_z.push_back(s.z);
        pot.site_v.push_back(sign * std::norm(s.field));
    }
    return pot;
}

}  // namespace braggcav
