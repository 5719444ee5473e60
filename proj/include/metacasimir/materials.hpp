#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <variant>

namespace metacasimir {

/// Material constants of the two-oscillator magneto-dielectric model.
/// Every frequency is stored in rad/s.
struct DispersionParams {
  double omega_p = 0.0;  // reference scale
  double Omega_D = 0.0;  // Drude strength
  double gamma_D = 0.0;  // Drude dissipation
  double Omega_e = 0.0;  // dielectric Drude-Lorentz strength
  double omega_e = 0.0;  // dielectric resonance
  double gamma_e = 0.0;  // dielectric dissipation
  double Omega_m = 0.0;  // magnetic Drude-Lorentz strength
  double omega_m = 0.0;  // magnetic resonance
  double gamma_m = 0.0;  // magnetic dissipation

  /// Ratios to omega_p, in field order Omega_D, gamma_D, Omega_e, omega_e,
  /// gamma_e, Omega_m, omega_m, gamma_m.
  struct Ratios {
    double Omega_D = 1.0;
    double gamma_D = 0.004;
    double Omega_e = 0.04;
    double omega_e = 0.1;
    double gamma_e = 0.005;
    double Omega_m = 0.1;
    double omega_m = 0.1;
    double gamma_m = 0.005;
  };

  static constexpr double kGoldPlasmaFrequency = 1.37e16;  // rad/s

  static DispersionParams from_ratios(const Ratios& r,
                                      double omega_p = kGoldPlasmaFrequency);
  static DispersionParams defaults() { return from_ratios(Ratios{}); }

  Ratios ratios() const;

  /// Throws std::invalid_argument if a strength/resonance is not strictly
  /// positive or a dissipation is negative.
  void validate() const;
};

enum class PermittivityModel { DrudeMetal, LorentzDielectric };
enum class PermeabilityModel { LorentzMagnetic, NonMagnetic };

struct MaterialKind {
  PermittivityModel permittivity = PermittivityModel::LorentzDielectric;
  PermeabilityModel permeability = PermeabilityModel::NonMagnetic;

  bool operator==(const MaterialKind&) const = default;
};

// The four combinations used by the chessboard cases.
inline constexpr MaterialKind kEhMh{PermittivityModel::DrudeMetal,
                                    PermeabilityModel::LorentzMagnetic};
inline constexpr MaterialKind kEhMl{PermittivityModel::DrudeMetal,
                                    PermeabilityModel::NonMagnetic};
inline constexpr MaterialKind kElMh{PermittivityModel::LorentzDielectric,
                                    PermeabilityModel::LorentzMagnetic};
inline constexpr MaterialKind kElMl{PermittivityModel::LorentzDielectric,
                                    PermeabilityModel::NonMagnetic};

/// Frequency-independent material; bypasses the dispersion models.
struct ConstantMaterial {
  double eps = 1.0;
  double mu = 1.0;

  bool operator==(const ConstantMaterial&) const = default;
};

using PatchMaterial = std::variant<MaterialKind, ConstantMaterial>;

enum class CaseVariant { EhMh_ElMl, ElMh_EhMl };

/// Patch index (1 or 2) to material mapping for the two studied cases.
struct CaseAssignment {
  CaseVariant variant = CaseVariant::EhMh_ElMl;

  MaterialKind patch(int index) const;
};

std::string to_string(CaseVariant v);

/// Raised when a response function is requested where it diverges.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double eps_at(MaterialKind kind, double zeta, const DispersionParams& params);
double mu_at(MaterialKind kind, double zeta, const DispersionParams& params);

double eps_at(const PatchMaterial& m, double zeta, const DispersionParams& params);
double mu_at(const PatchMaterial& m, double zeta, const DispersionParams& params);

/// Clausius-Mossotti resummed dielectric contrast (eps - 1) / (1 + (eps - 1)/3).
double cm_contrast(double eps);

enum class Resummation { ClausiusMossotti, Bare };

/// Dielectric and magnetic contrasts of patches 1 and 2 (array index 0 and 1).
/// The dielectric contrast is resummed according to `mode`; the magnetic one
/// is always the raw mu - 1.
struct PatchContrasts {
  std::array<double, 2> eps_bar{};
  std::array<double, 2> mu{};
};

PatchContrasts patch_contrasts(const CaseAssignment& assign, double zeta,
                               const DispersionParams& params);

PatchContrasts patch_contrasts(const PatchMaterial& patch1,
                               const PatchMaterial& patch2, double zeta,
                               const DispersionParams& params,
                               Resummation mode = Resummation::ClausiusMossotti);

}  // namespace metacasimir
