#pragma once
//
// Command drivers behind the CLI: each produces the complete output file as
// a string (header block echoing the resolved parameters, column names,
// CSV rows).

#include <string>

#include "braggcav/run_config.hpp"

namespace braggcav {

/// Closed-form and brute-force stack coefficients side by side.
std::string cmd_coeffs(const RunConfig& rc);

/// Lattice period in wavelength units and as d*k.
std::string cmd_spacing(const RunConfig& rc);

/// log10(1/|D|^2) over the configured (u, chi) grid; rows (u, z_a/lambda, value).
std::string cmd_det_scan(const RunConfig& rc);

/// Branch-tracked linewidth vs atom position, full and uniform-gas modes.
std::string cmd_linewidth_inset(const RunConfig& rc);

/// Field envelope at drive detuning u on the branch crossing selected by
/// `branch` (0-based, crossings ordered by chi). Throws NumericalError when
/// the branch never reaches u inside the configured window.
std::string cmd_envelope(const RunConfig& rc, double u, int branch);

/// Determinant zeros at the configured atom phase inside [u_min, u_max].
std::string cmd_resonances(const RunConfig& rc);

}  // namespace braggcav
