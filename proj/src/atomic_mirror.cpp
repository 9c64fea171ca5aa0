#include "braggcav/atomic_mirror.hpp"

#include <cmath>
#include <numbers>

namespace braggcav {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_finite_coupling(SiteCoupling c) {
    if (!std::isfinite(c.lambda)) {
        throw std::invalid_argument("site coupling lambda must be finite");
    }
}

void require_site_count(int n_sites) {
    if (n_sites < 1) {
        throw std::invalid_argument("n_sites must be >= 1");
    }
}

}  // namespace

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

SiteCoupling lambda_from_physical(const PhysicalParams& p) {
    if (!(p.wavelength > 0.0)) {
        throw std::invalid_argument("wavelength must be positive");
    }
    if (p.detuning == 0.0 || !std::isfinite(p.detuning)) {
        throw std::invalid_argument("detuning must be nonzero and finite");
    }
    if (p.atoms_per_site < 1) {
        throw std::invalid_argument("atoms_per_site must be >= 1");
    }
    if (!(p.vacuum_permittivity > 0.0) || !(p.reduced_planck > 0.0)) {
        throw std::invalid_argument("physical constants must be positive");
    }
    if (!std::isfinite(p.dipole_moment) || !std::isfinite(p.overlap_a)) {
        throw std::invalid_argument("dipole_moment and overlap_a must be finite");
    }
    const double k = 2.0 * std::numbers::pi / p.wavelength;
    const double rabi = 2.0 * p.dipole_moment * p.dipole_moment * p.overlap_a /
                        (p.reduced_planck * p.detuning);
    return {k / (4.0 * p.vacuum_permittivity) * static_cast<double>(p.atoms_per_site) * rabi};
}

double lattice_spacing(SiteCoupling c, double wavenumber) {
    require_finite_coupling(c);
    if (!(wavenumber > 0.0)) {
        throw std::invalid_argument("wavenumber must be positive");
    }
    return (std::numbers::pi + 2.0 * std::atan(c.lambda)) / wavenumber;
}

StackCoefficients site_coefficients(SiteCoupling c) {
    require_finite_coupling(c);
    const cplx denom = 1.0 + kI * c.lambda;
    const cplx r = -kI * c.lambda / denom;
    return {r, r, 1.0 / denom, 1};
}

StackCoefficients stack_coefficients(SiteCoupling c, int n_sites) {
    require_finite_coupling(c);
    require_site_count(n_sites);
    const double n = static_cast<double>(n_sites);
    const double alpha = std::atan(c.lambda);
    const cplx denom = 1.0 - kI * (c.lambda * n);
    const cplx amp = -kI * (c.lambda * n) / denom;
    return {amp * std::polar(1.0, -2.0 * alpha),
            amp * std::polar(1.0, -2.0 * (2.0 * n - 1.0) * alpha),
            std::polar(1.0, -2.0 * n * alpha) / denom, n_sites};
}

TransferMatrix site_transfer_matrix(SiteCoupling c) {
    require_finite_coupling(c);
    // Field continuity plus the slope jump of the delta scatterer:
    // (f', b') = M (f, b) with f' = f - i L (f + b), b' = b + i L (f + b).
    const cplx il = kI * c.lambda;
    return {1.0 - il, -il, il, 1.0 + il};
}

TransferMatrix propagation_matrix(double phase) {
    return {std::polar(1.0, phase), 0.0, 0.0, std::polar(1.0, -phase)};
}

StackCoefficients scattering_from_transfer(const TransferMatrix& m,
                                           double phase_to_end, int n_sites) {
    require_site_count(n_sites);
    if (m.m22 == cplx{0.0, 0.0}) {
        throw std::invalid_argument("singular transfer matrix: m22 == 0");
    }
    const cplx to_start = std::polar(1.0, -phase_to_end);
    return {-m.m21 / m.m22, m.m12 / m.m22 * to_start * to_start,
            to_start / m.m22, n_sites};
}

StackCoefficients stack_coefficients_bruteforce(SiteCoupling c, int n_sites) {
    require_finite_coupling(c);
    require_site_count(n_sites);
    const TransferMatrix site = site_transfer_matrix(c);
    const double kd = std::numbers::pi + 2.0 * std::atan(c.lambda);
    const TransferMatrix hop = propagation_matrix(kd);

    TransferMatrix total = site;
    double phase_to_end = 0.0;
    for (int l = 1; l < n_sites; ++l) {
        total = site * (hop * total);
        phase_to_end += kd;
    }
    StackCoefficients out = scattering_from_transfer(total, phase_to_end, n_sites);
    if (!std::isfinite(std::abs(out.r_fwd)) || !std::isfinite(std::abs(out.t))) {
        throw std::overflow_error("transfer-matrix product overflowed");
    }
    return out;
}

}  // namespace braggcav
