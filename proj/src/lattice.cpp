#include "metacasimir/lattice.hpp"

#include <cmath>

#include "metacasimir/constants.hpp"

namespace metacasimir {

MaterialSetup MaterialSetup::from_case(CaseAssignment assign) {
  MaterialSetup s;
  s.lower = BodyMaterials{assign.patch(1), assign.patch(2)};
  s.upper = s.lower;
  s.resummation = Resummation::ClausiusMossotti;
  return s;
}

MaterialSetup MaterialSetup::homogeneous(ConstantMaterial lower, ConstantMaterial upper,
                                         Resummation mode) {
  MaterialSetup s;
  s.lower = BodyMaterials{lower, lower};
  s.upper = BodyMaterials{upper, upper};
  s.resummation = mode;
  return s;
}

bool MaterialSetup::is_constant() const {
  auto c = [](const PatchMaterial& p) { return std::holds_alternative<ConstantMaterial>(p); };
  return c(lower.patch1) && c(lower.patch2) && c(upper.patch1) && c(upper.patch2);
}

void ChessboardSpec::validate() const {
  if (!(lambda_x > 0.0) || !(lambda_y > 0.0) || !std::isfinite(lambda_x) ||
      !std::isfinite(lambda_y))
    throw std::invalid_argument("lattice wavelengths must be positive");
  if (!(f_x > 0.0 && f_x < 1.0) || !(f_y > 0.0 && f_y < 1.0))
    throw std::invalid_argument("fill fractions must lie in (0, 1)");
}

double sin_pi(double x) {
  const double r = x - 2.0 * std::round(x / 2.0);  // r in [-1, 1]
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  return std::sin(kPi * r);
}

namespace {

// Fourier coefficient of the centered unit pulse of width f.
double pulse_coefficient(int k, double f) {
  if (k == 0) return f;
  return sin_pi(k * f) / (k * kPi);
}

}  // namespace

double geometric_coefficient(ModeIndex idx, double f_x, double f_y) {
  const int n = idx.n;
  const int m = idx.m;
  if (n == 0 && m == 0) return f_x * f_y + (1.0 - f_x) * (1.0 - f_y);
  if (m == 0) return (2.0 * f_y - 1.0) * pulse_coefficient(n, f_x);
  if (n == 0) return (2.0 * f_x - 1.0) * pulse_coefficient(m, f_y);
  return 2.0 * pulse_coefficient(n, f_x) * pulse_coefficient(m, f_y);
}

double profile_amplitude(ModeIndex idx, double coefficient, double v1, double v2) {
  const double diff = (v2 - v1) * coefficient;
  return (idx.n == 0 && idx.m == 0) ? v1 + diff : diff;
}

ModeAmplitude mode_amplitudes(const ChessboardSpec& spec, ModeIndex idx, double zeta,
                              const DispersionParams& params) {
  const MaterialSetup& mat = spec.materials;
  ModeAmplitude out;
  out.C = geometric_coefficient(idx, spec.f_x, spec.f_y);
  auto body = [&](const BodyMaterials& b) {
    const PatchContrasts pc =
        patch_contrasts(b.patch1, b.patch2, zeta, params, mat.resummation);
    return BodyAmplitude{profile_amplitude(idx, out.C, pc.eps_bar[0], pc.eps_bar[1]),
                         profile_amplitude(idx, out.C, pc.mu[0], pc.mu[1])};
  };
  out.lower = body(mat.lower);
  out.upper = body(mat.upper);
  return out;
}

int profile_value(const ChessboardSpec& spec, double x, double y) {
  // Fractional coordinate relative to the nearest pulse center, in [-1/2, 1/2].
  auto inside = [](double coord, double lambda, double f) {
    const double s = coord / lambda;
    const double r = s - std::floor(s + 0.5);
    return std::abs(r) < 0.5 * f;
  };
  const bool u = inside(x, spec.lambda_x, spec.f_x);
  const bool v = inside(y, spec.lambda_y, spec.f_y);
  return (u == v) ? 2 : 1;
}

}  // namespace metacasimir
