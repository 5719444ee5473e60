#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "metacasimir/config.hpp"

namespace metacasimir {

/// Column-named numeric table emitted by the sweep subcommands.
struct DataTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Rows are in sweep order: H outer, a inner (vector field: a outer, b inner).
DataTable normal_sweep(const RunConfig& cfg);
DataTable lateral_sweep(const RunConfig& cfg);
DataTable vector_field(const RunConfig& cfg);

/// Closed form vs quadrature for cfg.contrasts at every separation.
/// Columns: H_nm, quadrature_Pa, closed_form_Pa, rel_deviation.
DataTable homogeneous_comparison(const RunConfig& cfg);
inline constexpr double kHomogeneousTolerance = 1e-6;

/// CSV with a '#' comment header carrying the resolved config, or a JSON
/// object {version, config, columns, rows}.
void write_table(const DataTable& table, const RunConfig& cfg, std::ostream& os);

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitValidation = 4,
};

/// Entry point of the `metacasimir` executable. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metacasimir
