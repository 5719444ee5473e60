#include "metacasimir/materials.hpp"

#include <cmath>

namespace metacasimir {

DispersionParams DispersionParams::from_ratios(const Ratios& r, double omega_p) {
  DispersionParams p;
  p.omega_p = omega_p;
  p.Omega_D = r.Omega_D * omega_p;
  p.gamma_D = r.gamma_D * omega_p;
  p.Omega_e = r.Omega_e * omega_p;
  p.omega_e = r.omega_e * omega_p;
  p.gamma_e = r.gamma_e * omega_p;
  p.Omega_m = r.Omega_m * omega_p;
  p.omega_m = r.omega_m * omega_p;
  p.gamma_m = r.gamma_m * omega_p;
  p.validate();
  return p;
}

DispersionParams::Ratios DispersionParams::ratios() const {
  Ratios r;
  r.Omega_D = Omega_D / omega_p;
  r.gamma_D = gamma_D / omega_p;
  r.Omega_e = Omega_e / omega_p;
  r.omega_e = omega_e / omega_p;
  r.gamma_e = gamma_e / omega_p;
  r.Omega_m = Omega_m / omega_p;
  r.omega_m = omega_m / omega_p;
  r.gamma_m = gamma_m / omega_p;
  return r;
}

void DispersionParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be positive and finite");
  };
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be non-negative and finite");
  };
  positive(omega_p, "omega_p");
  positive(Omega_D, "Omega_D");
  positive(Omega_e, "Omega_e");
  positive(omega_e, "omega_e");
  positive(Omega_m, "Omega_m");
  positive(omega_m, "omega_m");
  non_negative(gamma_D, "gamma_D");
  non_negative(gamma_e, "gamma_e");
  non_negative(gamma_m, "gamma_m");
}

MaterialKind CaseAssignment::patch(int index) const {
  if (index != 1 && index != 2)
    throw std::out_of_range("patch index must be 1 or 2");
  switch (variant) {
    case CaseVariant::EhMh_ElMl:
      return index == 2 ? kEhMh : kElMl;
    case CaseVariant::ElMh_EhMl:
      return index == 2 ? kElMh : kEhMl;
  }
  throw std::logic_error("unknown case variant");
}

std::string to_string(CaseVariant v) {
  return v == CaseVariant::EhMh_ElMl ? "ehmh-elml" : "elmh-ehml";
}

double eps_at(MaterialKind kind, double zeta, const DispersionParams& params) {
  if (!(zeta >= 0.0)) throw DomainError("eps_at: zeta must be >= 0");
  if (std::isinf(zeta)) return 1.0;
  switch (kind.permittivity) {
    case PermittivityModel::DrudeMetal: {
      if (zeta == 0.0)
        throw DomainError("eps_at: Drude permittivity diverges at zeta = 0");
      const double w2 = params.Omega_D * params.Omega_D;
      return 1.0 + w2 / (zeta * zeta + params.gamma_D * zeta);
    }
    case PermittivityModel::LorentzDielectric: {
      const double w2 = params.Omega_e * params.Omega_e;
      return 1.0 + w2 / (zeta * zeta + params.omega_e * params.omega_e +
                         params.gamma_e * zeta);
    }
  }
  throw std::logic_error("unknown permittivity model");
}

double mu_at(MaterialKind kind, double zeta, const DispersionParams& params) {
  if (!(zeta >= 0.0)) throw DomainError("mu_at: zeta must be >= 0");
  if (kind.permeability == PermeabilityModel::NonMagnetic) return 1.0;
  if (std::isinf(zeta)) return 1.0;
  const double w2 = params.Omega_m * params.Omega_m;
  return 1.0 + w2 / (zeta * zeta + params.omega_m * params.omega_m +
                     params.gamma_m * zeta);
}

double eps_at(const PatchMaterial& m, double zeta, const DispersionParams& params) {
  if (const auto* c = std::get_if<ConstantMaterial>(&m)) return c->eps;
  return eps_at(std::get<MaterialKind>(m), zeta, params);
}

double mu_at(const PatchMaterial& m, double zeta, const DispersionParams& params) {
  if (const auto* c = std::get_if<ConstantMaterial>(&m)) return c->mu;
  return mu_at(std::get<MaterialKind>(m), zeta, params);
}

double cm_contrast(double eps) {
  const double d = eps - 1.0;
  return d / (1.0 + d / 3.0);
}

PatchContrasts patch_contrasts(const PatchMaterial& patch1,
                               const PatchMaterial& patch2, double zeta,
                               const DispersionParams& params, Resummation mode) {
  PatchContrasts out;
  const std::array<const PatchMaterial*, 2> patches{&patch1, &patch2};
  for (std::size_t i = 0; i < 2; ++i) {
    const double eps = eps_at(*patches[i], zeta, params);
    out.eps_bar[i] = mode == Resummation::ClausiusMossotti ? cm_contrast(eps) : eps - 1.0;
    out.mu[i] = mu_at(*patches[i], zeta, params) - 1.0;
  }
  return out;
}

PatchContrasts patch_contrasts(const CaseAssignment& assign, double zeta,
                               const DispersionParams& params) {
  return patch_contrasts(assign.patch(1), assign.patch(2), zeta, params,
                         Resummation::ClausiusMossotti);
}

}  // namespace metacasimir
