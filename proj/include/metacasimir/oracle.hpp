#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "metacasimir/assembly.hpp"

namespace metacasimir::oracle {

/// Result of one independent cross-check.
struct OracleReport {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double deviation = 0.0;  // relative unless `absolute` is set
  double tolerance = 0.0;
  bool absolute = false;
  bool pass = false;
  bool informational = false;  // reported, never failing
  std::string detail;
};

/// Relative check; falls back to absolute deviation when reference == 0.
OracleReport relative_check(std::string name, double computed, double reference,
                            double tolerance);
OracleReport absolute_check(std::string name, double computed, double reference,
                            double tolerance);

/// Fourier coefficients of the chessboard indicator sampled at cell centers
/// of a grid_n x grid_n grid, |n|, |m| <= max_index. Each cell's exponential
/// is integrated exactly over the cell, so the result is exact whenever
/// patch edges fall on cell boundaries. Throws std::invalid_argument when
/// f * grid_n / 2 is not an integer in either direction.
std::map<ModeIndex, double> dft_coefficients(const ChessboardSpec& spec, int grid_n,
                                             int max_index = 8);

/// Central difference (f(x + h) - f(x - h)) / 2h, optionally with one
/// Richardson step using h/2.
double finite_difference(const std::function<double(double)>& fn, double at, double step,
                         bool richardson = false);

/// Truncated Parseval sum over |n|, |m| <= max_index.
double parseval_sum(double f_x, double f_y, int max_index);

struct ValidationConfig {
  DispersionParams params = DispersionParams::defaults();
  QuadratureSpec quad;
  int workers = 1;
  /// Test hook: relative corruption applied to the closed-form reference
  /// values. Any nonzero value beyond tolerance must make the suite fail.
  double corrupt_reference = 0.0;
};

/// FullLattice vs PaperEpp energies at three parameter points. Informational.
std::vector<OracleReport> convention_report(const ValidationConfig& cfg);

/// Every closed-form, oracle, and symmetry check at small scale, in a fixed
/// order. Informational entries never fail.
std::vector<OracleReport> run_validation_suite(const ValidationConfig& cfg);

bool all_passed(const std::vector<OracleReport>& reports);

/// One JSON object per check: name, computed, reference, deviation,
/// tolerance, pass (plus informational and detail).
std::string to_json(const std::vector<OracleReport>& reports);

}  // namespace metacasimir::oracle
