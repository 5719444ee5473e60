#include "metacasimir/assembly.hpp"

#include <cmath>

namespace metacasimir {

std::string to_string(SumConvention conv) {
  return conv == SumConvention::FullLattice ? "full" : "paper-epp";
}

namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr double kTwoPi = 2.0 * kPi;

double prefactor() {
  const double c = PhysicalConstants::c;
  return PhysicalConstants::hbar / (4.0 * kPi * kPi * c * c);
}

// Sum of cos(G.d) over the sign orbit of a representative.
double orbit_cosine(ModeIndex r, Displacement d, SumConvention conv) {
  const double th_plus = kTwoPi * (r.n * d.a + r.m * d.b);
  if (r.n == 0 && r.m == 0) return 1.0;
  if (conv == SumConvention::PaperEpp) {
    // -hbar/(2 pi^2 c^2) sum' cos: twice the FullLattice prefactor per term,
    // one term per (n, m >= 0).
    return 2.0 * std::cos(th_plus);
  }
  if (r.n == 0 || r.m == 0) return 2.0 * std::cos(th_plus);
  const double th_minus = kTwoPi * (r.n * d.a - r.m * d.b);
  return 2.0 * std::cos(th_plus) + 2.0 * std::cos(th_minus);
}

template <class Pick>
double weighted_sum(const ModeTable& table, Displacement d, SumConvention conv, Pick pick) {
  CompensatedSum sum;
  for (const auto& e : table.entries) sum.add(orbit_cosine(e.rep, d, conv) * pick(e));
  return sum.value();
}

}  // namespace

double energy_per_area(const ModeTable& table, Displacement d, SumConvention conv) {
  return -prefactor() *
         weighted_sum(table, d, conv, [](const ModeEntry& e) { return e.integrals.energy.value; });
}

double normal_pressure(const ModeTable& table, Displacement d, SumConvention conv) {
  return -prefactor() *
         weighted_sum(table, d, conv, [](const ModeEntry& e) { return e.integrals.force.value; });
}

double mean_mode_pressure(const ModeTable& table) {
  const ModeEntry* mean = table.find({0, 0});
  return mean ? -prefactor() * mean->integrals.force.value : 0.0;
}

LateralPressure lateral_pressure(const ModeTable& table, Displacement d) {
  // F = -(1/lambda) dE/da: every cos(theta) becomes (2 pi n / lambda_x) sin(theta).
  CompensatedSum fx;
  CompensatedSum fy;
  for (const auto& e : table.entries) {
    const ModeIndex r = e.rep;
    if (r.n == 0 && r.m == 0) continue;
    const double I = e.integrals.energy.value;
    const double s_plus = std::sin(kTwoPi * (r.n * d.a + r.m * d.b));
    if (r.n == 0 || r.m == 0) {
      fx.add(2.0 * r.n * s_plus * I);
      fy.add(2.0 * r.m * s_plus * I);
      continue;
    }
    const double s_minus = std::sin(kTwoPi * (r.n * d.a - r.m * d.b));
    fx.add(2.0 * r.n * (s_plus + s_minus) * I);
    fy.add(2.0 * r.m * (s_plus - s_minus) * I);
  }
  const double k = -prefactor() * kTwoPi;
  return {k * fx.value() / table.spec.lambda_x, k * fy.value() / table.spec.lambda_y};
}

ForceResult evaluate(const ModeTable& table, Displacement d, SumConvention conv) {
  ForceResult r;
  r.energy_per_area = energy_per_area(table, d, conv);
  r.normal_pressure = normal_pressure(table, d, conv);
  r.lateral = conv == SumConvention::FullLattice ? lateral_pressure(table, d) : LateralPressure{};
  r.F0 = mean_mode_pressure(table);
  r.modes_used = table.modes_used();

  double err = 0.0;
  double mag = 0.0;
  for (const auto& e : table.entries) {
    err += e.multiplicity() * e.integrals.force.error_estimate;
    mag += e.multiplicity() * std::abs(e.integrals.force.value);
  }
  r.est_rel_error = (mag > 0.0 ? err / mag : 0.0) + table.truncation_estimate;
  return r;
}

void require_converged(const ModeTable& table, Displacement d, SumConvention conv) {
  if (table.converged()) return;
  const std::string why = !table.quadrature_converged
                              ? "mode quadrature did not reach tolerance"
                              : "mode sum did not converge within the shell limit";
  throw NonConvergenceError(why, evaluate(table, d, conv));
}

double energy_per_area(const ChessboardSpec& spec, double H, Displacement d,
                       const DispersionParams& params, const QuadratureSpec& quad,
                       SumConvention conv, int workers) {
  const ModeTable t = build_mode_table(spec, H, params, quad, workers);
  require_converged(t, d, conv);
  return energy_per_area(t, d, conv);
}

NormalForce normal_force(const ChessboardSpec& spec, double H, Displacement d,
                         const DispersionParams& params, const QuadratureSpec& quad,
                         SumConvention conv, int workers) {
  const ModeTable t = build_mode_table(spec, H, params, quad, workers);
  require_converged(t, d, conv);
  return {normal_pressure(t, d, conv), mean_mode_pressure(t)};
}

LateralPressure lateral_force(const ChessboardSpec& spec, double H, Displacement d,
                              const DispersionParams& params, const QuadratureSpec& quad,
                              int workers) {
  const ModeTable t = build_mode_table(spec, H, params, quad, workers);
  require_converged(t, d, SumConvention::FullLattice);
  return lateral_pressure(t, d);
}

double homogeneous_closed_form(const HomogeneousContrasts& k, double H) {
  if (!(H > 0.0)) throw std::domain_error("closed form: H must be positive");
  const double bracket =
      23.0 * (k.eps_d * k.eps_u + k.mu_d * k.mu_u) - 7.0 * (k.eps_d * k.mu_u + k.eps_u * k.mu_d);
  const double H4 = H * H * H * H;
  return -PhysicalConstants::hbar * PhysicalConstants::c / (640.0 * kPi * kPi * H4) * bracket;
}

double homogeneous_closed_form_energy(const HomogeneousContrasts& k, double H) {
  if (!(H > 0.0)) throw std::domain_error("closed form: H must be positive");
  const double bracket =
      23.0 * (k.eps_d * k.eps_u + k.mu_d * k.mu_u) - 7.0 * (k.eps_d * k.mu_u + k.eps_u * k.mu_d);
  return -PhysicalConstants::hbar * PhysicalConstants::c / (1920.0 * kPi * kPi * H * H * H) *
         bracket;
}

ChessboardSpec homogeneous_spec(const HomogeneousContrasts& k) {
  ChessboardSpec spec;
  spec.materials = MaterialSetup::homogeneous({1.0 + k.eps_d, 1.0 + k.mu_d},
                                              {1.0 + k.eps_u, 1.0 + k.mu_u});
  return spec;
}

}  // namespace metacasimir
