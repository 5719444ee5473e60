#pragma once

#include "metacasimir/materials.hpp"

namespace metacasimir {

/// Patch materials of one body.
struct BodyMaterials {
  PatchMaterial patch1 = kElMl;
  PatchMaterial patch2 = kEhMh;
};

/// Materials of the lower and upper body plus the dielectric resummation.
struct MaterialSetup {
  BodyMaterials lower;
  BodyMaterials upper;
  Resummation resummation = Resummation::ClausiusMossotti;

  static MaterialSetup from_case(CaseAssignment assign);

  /// Uniform constant media on both sides, bare contrasts.
  static MaterialSetup homogeneous(ConstantMaterial lower, ConstantMaterial upper,
                                   Resummation mode = Resummation::Bare);

  /// True when every patch of both bodies is a ConstantMaterial.
  bool is_constant() const;
};

/// Chessboard geometry shared by both bodies. Lengths in metres.
struct ChessboardSpec {
  double lambda_x = 500e-9;
  double lambda_y = 500e-9;
  double f_x = 0.5;
  double f_y = 0.5;
  MaterialSetup materials = MaterialSetup::from_case({});

  /// Throws std::invalid_argument on non-positive wavelengths or fill
  /// fractions outside (0, 1).
  void validate() const;
};

/// Lateral shift of the upper body in units of (lambda_x, lambda_y).
struct Displacement {
  double a = 0.0;
  double b = 0.0;
};

struct ModeIndex {
  int n = 0;
  int m = 0;

  bool operator==(const ModeIndex&) const = default;
  auto operator<=>(const ModeIndex&) const = default;
};

struct BodyAmplitude {
  double A = 0.0;  // resummed dielectric amplitude
  double B = 0.0;  // magnetic amplitude
};

struct ModeAmplitude {
  double C = 0.0;  // geometric coefficient
  BodyAmplitude lower;
  BodyAmplitude upper;
};

/// sin(pi x) with exact zeros at integer x.
double sin_pi(double x);

/// Fourier coefficient of the unit chessboard indicator
/// p(x, y) = u(x) u(y) + (1 - u(x)) (1 - u(y)) built from centered pulses.
double geometric_coefficient(ModeIndex idx, double f_x, double f_y);

/// Fourier amplitude of a two-patch profile with values v1 (patch 1) and v2
/// (patch 2): v1 [n = m = 0] + (v2 - v1) C_nm.
double profile_amplitude(ModeIndex idx, double coefficient, double v1, double v2);

ModeAmplitude mode_amplitudes(const ChessboardSpec& spec, ModeIndex idx, double zeta,
                              const DispersionParams& params);

/// Patch index (1 or 2) at lateral position (x, y) in metres, wrapped into the
/// unit cell. Patch 2 is the set where the indicator equals one.
int profile_value(const ChessboardSpec& spec, double x, double y);

}  // namespace metacasimir
