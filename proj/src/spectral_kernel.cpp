#include "metacasimir/spectral_kernel.hpp"

#include <array>
#include <cmath>

#include "metacasimir/constants.hpp"
#include "metacasimir/quadrature.hpp"

namespace metacasimir {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(abs_floor >= 0.0)) throw std::invalid_argument("abs_floor must be non-negative");
  if (max_subdivisions < 16) throw std::invalid_argument("max_subdivisions must be >= 16");
  if (!(inner_tol_factor > 0.0 && inner_tol_factor <= 1.0))
    throw std::invalid_argument("inner_tol_factor must lie in (0, 1]");
  if (max_shells < 1) throw std::invalid_argument("max_shells must be >= 1");
  if (fixed_shells < 0) throw std::invalid_argument("fixed_shells must be >= 0");
}

double transverse_wavenumber(const ChessboardSpec& spec, ModeIndex idx) {
  const double kx = idx.n / spec.lambda_x;
  const double ky = idx.m / spec.lambda_y;
  return 2.0 * kPi * std::hypot(kx, ky);
}

namespace {

// In the scaled variables zeta = (c/H) t and s = 2 p t the double integral is
//   (c/H)^3 int_0^inf dt int_{2t}^inf ds W(s) [S_ee Pee(t, s) - S_em Pem(t, s)]
// with W = exp(-R)/R^3, R = sqrt(s^2 + g^2), g = G H and
//   Pee = s^4/16 - t^2 s^2/4 + t^4/2,  Pem = t^2 s^2/4 - t^4/2.
// The force integrand carries an extra R/H.
struct InnerMoments {
  std::array<double, 4> m{};  // W Pee, W Pem, W R Pee, W R Pem
  long evaluations = 0;
  bool converged = true;
};

InnerMoments inner_moments(double t, double g, double scale,
                           const quad::AdaptiveControl& ctl) {
  const double t2 = t * t;
  const double t4 = t2 * t2;
  const double g2 = g * g;
  // exp(-R) is factored at the lower limit s = 2t to keep the integrand O(1).
  const double r0 = std::sqrt(4.0 * t2 + g2);
  auto integrand = [&](double y) {
    const double one_minus = 1.0 - y;
    const double u = scale * y / one_minus;
    const double jac = scale / (one_minus * one_minus);
    const double s = 2.0 * t + u;
    const double s2 = s * s;
    const double r = std::sqrt(s2 + g2);
    const double w = std::exp(r0 - r) / (r * r * r) * jac;
    const double pee = s2 * s2 / 16.0 - t2 * s2 / 4.0 + t4 / 2.0;
    const double pem = t2 * s2 / 4.0 - t4 / 2.0;
    return std::array<double, 4>{w * pee, w * pem, w * r * pee, w * r * pem};
  };
  const auto res = quad::integrate<4>(integrand, 0.0, 1.0, ctl);
  InnerMoments out{res.value, res.evaluations, res.converged};
  const double damping = std::exp(-r0);
  for (double& v : out.m) v *= damping;
  return out;
}

}  // namespace

ModeIntegrals mode_integrals(const ChessboardSpec& spec, ModeIndex idx, double H,
                             const DispersionParams& params, const QuadratureSpec& qs) {
  if (!(H > 0.0) || !std::isfinite(H))
    throw std::domain_error("mode integral: separation H must be positive");

  const double c = PhysicalConstants::c;
  const double g = transverse_wavenumber(spec, idx) * H;
  const double coeff = geometric_coefficient(idx, spec.f_x, spec.f_y);
  const bool mean_mode = (idx.n == 0 && idx.m == 0);

  ModeIntegrals out;
  if (!mean_mode && coeff == 0.0) return out;

  const MaterialSetup& mat = spec.materials;
  const double zeta_scale = c / H;
  const double energy_units = zeta_scale * zeta_scale * zeta_scale;
  const double force_units = energy_units / H;
  const double assembled = PhysicalConstants::hbar / (4.0 * kPi * kPi * c * c);

  const double spread = std::max(1.0, std::sqrt(g));
  const double t_scale = 0.5 * spread;
  const double s_scale = spread;

  quad::AdaptiveControl inner_ctl;
  inner_ctl.rel_tol = qs.rel_tol * qs.inner_tol_factor;
  inner_ctl.abs_floor = 0.0;
  inner_ctl.max_subdivisions = qs.max_subdivisions;
  inner_ctl.initial_panels = 2;

  quad::AdaptiveControl outer_ctl;
  outer_ctl.rel_tol = qs.rel_tol;
  // One shared floor in dimensionless units, taken from the larger (force)
  // conversion factor.
  outer_ctl.abs_floor = qs.abs_floor / (assembled * force_units);
  outer_ctl.max_subdivisions = qs.max_subdivisions;
  outer_ctl.initial_panels = 4;

  long inner_evals = 0;
  bool inner_ok = true;

  auto amplitude = [&](const BodyMaterials& body, double zeta) {
    const PatchContrasts pc =
        patch_contrasts(body.patch1, body.patch2, zeta, params, mat.resummation);
    return BodyAmplitude{profile_amplitude(idx, coeff, pc.eps_bar[0], pc.eps_bar[1]),
                         profile_amplitude(idx, coeff, pc.mu[0], pc.mu[1])};
  };

  auto outer = [&](double x) {
    const double one_minus = 1.0 - x;
    const double t = t_scale * x / one_minus;
    const double jac = t_scale / (one_minus * one_minus);
    const double zeta = zeta_scale * t;
    const BodyAmplitude lo = amplitude(mat.lower, zeta);
    const BodyAmplitude up = amplitude(mat.upper, zeta);
    const double s_ee = lo.A * up.A + lo.B * up.B;
    const double s_em = lo.A * up.B + lo.B * up.A;
    if (s_ee == 0.0 && s_em == 0.0) return std::array<double, 2>{0.0, 0.0};
    const InnerMoments im = inner_moments(t, g, s_scale, inner_ctl);
    inner_evals += im.evaluations;
    inner_ok = inner_ok && im.converged;
    return std::array<double, 2>{jac * (s_ee * im.m[0] - s_em * im.m[1]),
                                 jac * (s_ee * im.m[2] - s_em * im.m[3])};
  };

  const auto res = quad::integrate<2>(outer, 0.0, 1.0, outer_ctl);
  const bool ok = res.converged && inner_ok;
  const long evals = res.evaluations + inner_evals;

  out.energy = ModeIntegralResult{energy_units * res.value[0],
                                  energy_units * res.error[0], evals, ok};
  out.force = ModeIntegralResult{force_units * res.value[1],
                                 force_units * res.error[1], evals, ok};
  return out;
}

ModeIntegralResult mode_energy_integral(const ChessboardSpec& spec, ModeIndex idx,
                                        double H, const DispersionParams& params,
                                        const QuadratureSpec& quad) {
  return mode_integrals(spec, idx, H, params, quad).energy;
}

ModeIntegralResult mode_force_integral(const ChessboardSpec& spec, ModeIndex idx,
                                       double H, const DispersionParams& params,
                                       const QuadratureSpec& quad) {
  return mode_integrals(spec, idx, H, params, quad).force;
}

}  // namespace metacasimir
