#pragma once

#include <stdexcept>
#include <string>

#include "metacasimir/constants.hpp"
#include "metacasimir/mode_table.hpp"

namespace metacasimir {

/// FullLattice sums every G in Z^2 with weight cos(G.d); PaperEpp is the
/// restricted n, m >= 0 sum with the halved mean mode, kept for comparison.
enum class SumConvention { FullLattice, PaperEpp };

std::string to_string(SumConvention conv);

struct LateralPressure {
  double x = 0.0;  // N/m^2
  double y = 0.0;  // N/m^2
};

struct NormalForce {
  double pressure = 0.0;  // N/m^2, negative = attractive
  double F0 = 0.0;        // mean-mode contribution
};

struct ForceResult {
  double energy_per_area = 0.0;  // J/m^2
  double normal_pressure = 0.0;  // N/m^2, negative = attractive
  LateralPressure lateral;       // N/m^2
  double F0 = 0.0;               // N/m^2
  int modes_used = 0;
  double est_rel_error = 0.0;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, ForceResult best)
      : std::runtime_error(what), best_(best) {}
  const ForceResult& best() const { return best_; }

 private:
  ForceResult best_;
};

// Evaluation on a precomputed table.
double energy_per_area(const ModeTable& table, Displacement d,
                       SumConvention conv = SumConvention::FullLattice);
double normal_pressure(const ModeTable& table, Displacement d,
                       SumConvention conv = SumConvention::FullLattice);
double mean_mode_pressure(const ModeTable& table);
LateralPressure lateral_pressure(const ModeTable& table, Displacement d);
ForceResult evaluate(const ModeTable& table, Displacement d,
                     SumConvention conv = SumConvention::FullLattice);

/// Throws NonConvergenceError if the table did not converge.
void require_converged(const ModeTable& table, Displacement d, SumConvention conv);

// One-shot operations: build the table, check convergence, evaluate.
double energy_per_area(const ChessboardSpec& spec, double H, Displacement d,
                       const DispersionParams& params, const QuadratureSpec& quad,
                       SumConvention conv = SumConvention::FullLattice, int workers = 1);
NormalForce normal_force(const ChessboardSpec& spec, double H, Displacement d,
                         const DispersionParams& params, const QuadratureSpec& quad,
                         SumConvention conv = SumConvention::FullLattice, int workers = 1);
LateralPressure lateral_force(const ChessboardSpec& spec, double H, Displacement d,
                              const DispersionParams& params, const QuadratureSpec& quad,
                              int workers = 1);

/// Frequency-independent contrasts of two homogeneous bodies.
struct HomogeneousContrasts {
  double eps_d = 0.0;
  double eps_u = 0.0;
  double mu_d = 0.0;
  double mu_u = 0.0;
};

/// Closed-form pressure between two homogeneous half-spaces at second order:
/// -(hbar c / 640 pi^2 H^4) [23 (de_d de_u + dm_d dm_u) - 7 (de_d dm_u + de_u dm_d)].
double homogeneous_closed_form(const HomogeneousContrasts& k, double H);

/// Energy per area whose -d/dH is homogeneous_closed_form.
double homogeneous_closed_form_energy(const HomogeneousContrasts& k, double H);

/// Chessboard spec whose patches are the given constant contrasts, bare.
ChessboardSpec homogeneous_spec(const HomogeneousContrasts& k);

}  // namespace metacasimir
