#pragma once

namespace metacasimir {

/// Fixed SI constants. Not configurable.
struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;  // J s
  static constexpr double c = 2.99792458e8;        // m/s
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace metacasimir
