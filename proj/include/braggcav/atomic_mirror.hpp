#pragma once
//
// Effective-mirror optics of a Bragg-spaced stack of delta scatterers.
//
// Conventions used throughout:
//   - time dependence e^{-i w t};
//   - within a segment the field is E(z) = f e^{ik(z-z0)} + b e^{-ik(z-z0)}
//     with z0 the local reference point of the (forward, backward) pair;
//   - stack coefficients (r_fwd, r_bwd, t) are referenced to the position of
//     the FIRST site, so a transparent stack (Lambda = 0) has t = 1 exactly
//     and the stack can be used as a point scatterer in boundary conditions
//     that attach free-propagation phases externally.
//
// The per-site coupling Lambda is dimensionless; its sign follows the sign
// of the detuning (negative for red detuning).

#include <complex>
#include <stdexcept>

namespace braggcav {

using cplx = std::complex<double>;

/// SI description of one lattice site's atom-light interaction.
struct PhysicalParams {
    double dipole_moment = 0.0;  // C m
    double wavelength = 0.0;     // m
    double detuning = 0.0;       // rad/s, signed (drive minus atomic transition)
    double overlap_a = 0.0;      // m^-2, transverse beam/density overlap integral
    int atoms_per_site = 1;
    double vacuum_permittivity = 8.8541878128e-12;  // F/m
    double reduced_planck = 1.054571817e-34;        // J s
};

/// Dimensionless collective coupling of a single occupied lattice site.
struct SiteCoupling {
    double lambda = 0.0;
};

/// Scattering coefficients of the whole stack, first-site referenced.
/// For real lambda the stack is lossless: |r_fwd|^2 + |t|^2 = 1 and
/// |r_fwd| = |r_bwd| (the phases differ).
struct StackCoefficients {
    cplx r_fwd{};
    cplx r_bwd{};
    cplx t{};
    int n_sites = 1;
};

/// 2x2 complex transfer matrix acting on (forward, backward) amplitude
/// pairs, left to right. Lossless elements have unit determinant.
struct TransferMatrix {
    cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

    [[nodiscard]] cplx det() const { return m11 * m22 - m12 * m21; }
};

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b);

/// Lambda = (k / 4 eps0) * n * Omega with Omega = 2 p^2 A / (hbar Delta)
/// and k = 2 pi / wavelength. Throws std::invalid_argument on zero
/// detuning, nonpositive wavelength or atoms_per_site < 1.
SiteCoupling lambda_from_physical(const PhysicalParams& p);

/// Self-consistent lattice period d = (pi + 2 arctan Lambda) / k.
double lattice_spacing(SiteCoupling c, double wavenumber);

/// Single-site coefficients r = -i L / (1 + i L), t = 1 / (1 + i L).
StackCoefficients site_coefficients(SiteCoupling c);

/// Closed-form coefficients of n_sites Bragg-spaced sites.
StackCoefficients stack_coefficients(SiteCoupling c, int n_sites);

/// Transfer matrix of one delta site; identity for lambda = 0.
TransferMatrix site_transfer_matrix(SiteCoupling c);

/// Free propagation over a segment of phase k*d: diag(e^{i phase}, e^{-i phase}).
TransferMatrix propagation_matrix(double phase);

/// Converts a left-to-right transfer matrix to scattering coefficients.
/// phase_to_end is the free-space phase k*(output reference - input
/// reference); the returned coefficients are input-side referenced.
StackCoefficients scattering_from_transfer(const TransferMatrix& m,
                                           double phase_to_end, int n_sites);

/// Ordered product of site and propagation matrices; the oracle the closed
/// forms must reproduce. Entries grow only linearly in Lambda*N at the
/// Bragg spacing, but the result is checked for overflow anyway.
StackCoefficients stack_coefficients_bruteforce(SiteCoupling c, int n_sites);

}  // namespace braggcav
