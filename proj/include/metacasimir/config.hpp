#pragma once

#include <string>
#include <utility>
#include <vector>

#include "metacasimir/assembly.hpp"

namespace metacasimir {

enum class OutputFormat { Csv, Json };

/// Fully resolved run configuration shared by all CLI subcommands.
/// Lengths are in nanometres here and converted on use.
struct RunConfig {
  std::string case_name = "ehmh-elml";  // ehmh-elml | elmh-ehml | custom-constant
  double lambda_x_nm = 500.0;
  double lambda_y_nm = 500.0;
  double fx = 0.5;
  double fy = 0.5;

  double omega_p = DispersionParams::kGoldPlasmaFrequency;
  DispersionParams::Ratios ratios;

  // custom-constant patches
  ConstantMaterial patch1{1.1, 1.0};
  ConstantMaterial patch2{1.5, 1.0};
  bool resum = false;

  // homogeneous subcommand
  HomogeneousContrasts contrasts{0.1, 0.1, 0.0, 0.0};

  std::vector<double> H_nm{100.0, 200.0, 300.0, 500.0};
  std::vector<double> a_values;  // empty: a grid
  double b = 0.0;
  int a_steps = 101;
  int b_steps = 21;
  std::string preset;  // vector-field: a | b | c

  double tol = 1e-8;
  int nmax = 64;
  SumConvention convention = SumConvention::FullLattice;
  int workers = 0;  // 0: available parallelism

  std::string out;
  OutputFormat format = OutputFormat::Csv;

  double corrupt_reference = 0.0;  // validate test hook

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  ChessboardSpec chessboard() const;
  DispersionParams dispersion() const;
  QuadratureSpec quadrature() const;
  int resolved_workers() const;

  /// Sweep grid over [0, 1] with `steps` points including both ends.
  static std::vector<double> unit_grid(int steps);
  std::vector<double> a_grid() const;

  /// Applies a named vector-field preset (a, b or c).
  void apply_preset(const std::string& name);

  /// Ordered key/value description of every resolved setting.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Locale-independent scientific notation with 12 significant digits.
std::string format_number(double v);

std::string version_string();

}  // namespace metacasimir
