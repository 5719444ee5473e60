#pragma once

#include <stdexcept>

#include "metacasimir/lattice.hpp"

namespace metacasimir {

/// Tolerances for the per-mode double integral and the mode-sum truncation.
struct QuadratureSpec {
  double rel_tol = 1e-8;         // per mode; also the shell truncation threshold
  double abs_floor = 1e-30;      // assembled SI units (J/m^2 or N/m^2)
  int max_subdivisions = 400;    // outer panel bisections per mode
  double inner_tol_factor = 0.1; // inner tolerance = factor * rel_tol
  int max_shells = 64;           // largest max(|n|, |m|) considered
  int fixed_shells = 0;          // > 0: sum exactly this many shells, no stopping rule

  void validate() const;
};

struct ModeIntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Energy integral I_nm and its -d/dH counterpart J_nm, evaluated together.
struct ModeIntegrals {
  ModeIntegralResult energy;  // s^-3
  ModeIntegralResult force;   // s^-3 m^-1
};

/// Transverse wavenumber 2 pi sqrt((n/lambda_x)^2 + (m/lambda_y)^2) in 1/m.
double transverse_wavenumber(const ChessboardSpec& spec, ModeIndex idx);

/// Both mode integrals. Throws std::domain_error if H <= 0. Non-convergence
/// is reported through the `converged` flags with the best estimate kept.
ModeIntegrals mode_integrals(const ChessboardSpec& spec, ModeIndex idx, double H,
                             const DispersionParams& params, const QuadratureSpec& quad);

/// I_nm(H) = int dzeta int_1^inf dp zeta^2 exp(-(zeta H/c) R)/R^3 [...],
/// R^2 = 4p^2 + (c G / zeta)^2, with the material bracket of both bodies.
ModeIntegralResult mode_energy_integral(const ChessboardSpec& spec, ModeIndex idx,
                                        double H, const DispersionParams& params,
                                        const QuadratureSpec& quad);

/// -dI_nm/dH, i.e. the same integrand times (zeta/c) R.
ModeIntegralResult mode_force_integral(const ChessboardSpec& spec, ModeIndex idx,
                                       double H, const DispersionParams& params,
                                       const QuadratureSpec& quad);

}  // namespace metacasimir
