#pragma once
//
// Driven three-mirror network: left mirror, atomic stack, right mirror.
//
// All frequency dependence enters through the round-trip phase
// theta = 2 w L / c (one free spectral range per 2 pi) and the atom phase
// chi = 2 k z_a. Mirror amplitude coefficients are r = +sqrt(R) and
// t = i sqrt(1 - R); the t phases only rotate the driven amplitudes and
// never move the determinant zeros.

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "braggcav/atomic_mirror.hpp"

namespace braggcav {

/// Thrown when a solver or a continuation cannot produce a valid result.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CavityConfig {
    double r1_intensity = 0.0;  // |R1|^2
    double r2_intensity = 0.0;  // |R2|^2
    SiteCoupling coupling{};
    int n_sites = 1;
    double atom_phase_chi = 0.0;       // chi = 2 k z_a, normalized to [0, 2 pi)
    std::optional<double> za_over_l{}; // optional exact complex continuation of chi

    CavityConfig(double r1i, double r2i, SiteCoupling c, int sites, double chi,
                 std::optional<double> za_l = std::nullopt);

    [[nodiscard]] double r1_amplitude() const;
    [[nodiscard]] double r2_amplitude() const;
    [[nodiscard]] cplx t1_amplitude() const;
    [[nodiscard]] cplx t2_amplitude() const;
    [[nodiscard]] StackCoefficients stack() const;
};

struct DriveFields {
    cplx e_left{1.0, 0.0};
    cplx e_right{0.0, 0.0};
};

/// theta = 2 w L / c; real part sweeps frequency, a negative imaginary part
/// encodes decay. Frequency in free-spectral-range units is theta / 2 pi.
struct RoundTripPhase {
    cplx theta{0.0, 0.0};

    [[nodiscard]] double u() const;
};

RoundTripPhase phase_at_u(double u);

/// Field amplitudes at the effective mirror: e1/e3 forward/backward just
/// left of the first site, e4/e2 forward/backward just right of the stack,
/// all referenced at the first site's position.
struct FieldAmplitudes {
    cplx e1{}, e2{}, e3{}, e4{};
};

enum class DetMode { full, uniform_gas };

/// D = 1 - r2 r_bwd e^{i(theta-chi)} - r1 r_fwd e^{i chi}
///       - r1 r2 (t^2 - r_fwd r_bwd) e^{i theta}, with chi from cfg.
cplx round_trip_determinant(const CavityConfig& cfg, RoundTripPhase phase);

/// Reflection-free reduction 1 - r1 r2 e^{i(theta + 2 phi)}, phi = arg t.
/// Independent of the atom phase.
cplx uniform_gas_determinant(const CavityConfig& cfg, RoundTripPhase phase);

/// Determinant with an explicit atom phase (used by scans and root finding).
cplx cavity_determinant(const CavityConfig& cfg, RoundTripPhase phase,
                        double chi, DetMode mode);

/// The 4x4 steady-state boundary-condition system A x = rhs for
/// x = (E1, E2, E3, E4); its determinant equals round_trip_determinant.
struct BoundarySystem {
    std::array<std::array<cplx, 4>, 4> lhs{};
    std::array<cplx, 4> rhs{};
};

BoundarySystem boundary_system(const CavityConfig& cfg, const DriveFields& drive,
                               RoundTripPhase phase);

/// Solves the boundary conditions for the four amplitudes. Throws
/// NumericalError when |D| < 1e-13 * scale (drive exactly on an undamped
/// resonance; cannot occur for intensities < 1 and real theta).
FieldAmplitudes solve_steady_state(const CavityConfig& cfg, const DriveFields& drive,
                                   RoundTripPhase phase);

/// One free-propagation span with constant (forward, backward) amplitudes,
/// referenced at z_start. z in units of the optical wavelength.
struct EnvelopeSegment {
    double z_start = 0.0;
    double z_end = 0.0;
    cplx forward{};
    cplx backward{};
    double envelope_max = 0.0;  // |f| + |b|
    double envelope_min = 0.0;  // ||f| - |b||
};

struct SiteField {
    double z = 0.0;
    cplx field{};  // E at the site, continuous across the delta layer
};

struct EnvelopeProfile {
    std::vector<EnvelopeSegment> segments;  // left free region, gaps, right free region
    std::vector<SiteField> site_fields;
    double lattice_start = 0.0;
    double lattice_end = 0.0;
    FieldAmplitudes amplitudes;
    double closure_error = 0.0;  // relative mismatch of the rightmost amplitudes

    // sampled curves over all segments
    std::vector<double> z_samples;
    std::vector<cplx> field_samples;
    std::vector<double> envelope_max_curve;
    std::vector<double> envelope_min_curve;
    std::vector<double> forward_mag;
    std::vector<double> backward_mag;
};

/// Propagates (E1, E3) site by site across the lattice and emits the
/// per-segment amplitudes, per-site fields and sampled envelope curves.
/// free_region_span is the plotted extent (in wavelengths) of the two
/// uniform regions towards the mirrors.
EnvelopeProfile field_envelope(const CavityConfig& cfg, const DriveFields& drive,
                               RoundTripPhase phase, int samples_per_segment = 32,
                               double free_region_span = 10.0);

/// Relative dipole potential V(z) = sign(lambda) |E(z)|^2 (units of
/// |Omega| |drive|^2), sampled on the envelope's z grid, plus the value at
/// every site position.
struct PotentialProfile {
    std::vector<double> z;
    std::vector<double> v;
    std::vector<double> site_z;
    std::vector<double> site_v;
};

PotentialProfile dipole_potential(const EnvelopeProfile& env, SiteCoupling c);

}  // namespace braggcav
