#pragma once

#include <vector>

#include "metacasimir/spectral_kernel.hpp"

namespace metacasimir {

/// One representative (n >= 0, m >= 0) of the sign orbit {(+-n, +-m)}.
/// The mode integrals depend on |n| and |m| only.
struct ModeEntry {
  ModeIndex rep;
  int shell = 0;
  ModeIntegrals integrals;

  /// Number of lattice points in the orbit (1, 2 or 4).
  int multiplicity() const;
};

/// Mode integrals of every non-vanishing orbit up to the truncation shell,
/// for one separation. Displacement-independent: every (a, b) evaluation at
/// this H reuses the same table.
struct ModeTable {
  ChessboardSpec spec;
  double H = 0.0;
  std::vector<ModeEntry> entries;  // ascending shell, fixed order within a shell
  int shells = 0;                  // last shell summed
  bool quadrature_converged = true;
  bool truncation_converged = true;
  double truncation_estimate = 0.0;  // last accepted shell / accumulated, relative
  long evaluations = 0;

  bool converged() const { return quadrature_converged && truncation_converged; }
  int modes_used() const;
  const ModeEntry* find(ModeIndex rep) const;
};

/// Representatives of shell max(n, m) = N in canonical order, skipping modes
/// whose geometric coefficient vanishes.
std::vector<ModeIndex> shell_representatives(const ChessboardSpec& spec, int shell);

/// Serial reference kernel.
ModeTable build_mode_table_serial(const ChessboardSpec& spec, double H,
                                  const DispersionParams& params,
                                  const QuadratureSpec& quad);

/// OpenMP kernel; identical output to the serial kernel for any worker count.
/// workers <= 0 selects the OpenMP default.
ModeTable build_mode_table_parallel(const ChessboardSpec& spec, double H,
                                    const DispersionParams& params,
                                    const QuadratureSpec& quad, int workers = 0);

/// Dispatches to the serial kernel for workers == 1.
ModeTable build_mode_table(const ChessboardSpec& spec, double H,
                           const DispersionParams& params, const QuadratureSpec& quad,
                           int workers = 1);

/// Available OpenMP threads (1 without OpenMP).
int available_workers();

}  // namespace metacasimir
