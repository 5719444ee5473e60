#include "metacasimir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "json.hpp"

namespace metacasimir::oracle {

OracleReport relative_check(std::string name, double computed, double reference,
                            double tolerance) {
  OracleReport r;
  r.name = std::move(name);
  r.computed = computed;
  r.reference = reference;
  r.tolerance = tolerance;
  if (reference == 0.0) {
    r.absolute = true;
    r.deviation = std::abs(computed);
  } else {
    r.deviation = std::abs(computed - reference) / std::abs(reference);
  }
  r.pass = r.deviation <= tolerance;
  return r;
}

OracleReport absolute_check(std::string name, double computed, double reference,
                            double tolerance) {
  OracleReport r;
  r.name = std::move(name);
  r.computed = computed;
  r.reference = reference;
  r.tolerance = tolerance;
  r.absolute = true;
  r.deviation = std::abs(computed - reference);
  r.pass = r.deviation <= tolerance;
  return r;
}

std::map<ModeIndex, double> dft_coefficients(const ChessboardSpec& spec, int grid_n,
                                             int max_index) {
  if (grid_n < 2 || grid_n % 2 != 0) throw std::invalid_argument("grid_n must be even");
  for (double f : {spec.f_x, spec.f_y}) {
    const double edge = 0.5 * f * grid_n;
    if (std::abs(edge - std::round(edge)) > 1e-9)
      throw std::invalid_argument("grid does not resolve the patch edges");
  }
  const int N = grid_n;
  const double pi = kPi;

  // Cell j spans [-1/2 + j/N, -1/2 + (j+1)/N) in units of the period.
  std::vector<double> centers(N);
  for (int j = 0; j < N; ++j) centers[j] = -0.5 + (j + 0.5) / N;
  std::vector<int> samples(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k)
      samples[static_cast<std::size_t>(j) * N + k] =
          profile_value(spec, centers[j] * spec.lambda_x, centers[k] * spec.lambda_y) == 2;

  // Exact integral of exp(-2 pi i n x) over one cell, divided by the cell
  // width, evaluated at each center.
  auto cell_factors = [&](int n) {
    std::vector<std::complex<double>> out(N);
    const double x = pi * n / N;
    const double sinc = n == 0 ? 1.0 : std::sin(x) / x;
    for (int j = 0; j < N; ++j)
      out[j] = std::polar(sinc / N, -2.0 * pi * n * centers[j]);
    return out;
  };

  std::map<ModeIndex, double> coeffs;
  std::vector<std::vector<std::complex<double>>> ey;
  for (int m = -max_index; m <= max_index; ++m) ey.push_back(cell_factors(m));
  for (int n = -max_index; n <= max_index; ++n) {
    const auto ex = cell_factors(n);
    std::vector<std::complex<double>> row(N);
    for (int k = 0; k < N; ++k) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < N; ++j)
        if (samples[static_cast<std::size_t>(j) * N + k]) acc += ex[j];
      row[k] = acc;
    }
    for (int m = -max_index; m <= max_index; ++m) {
      const auto& f = ey[static_cast<std::size_t>(m + max_index)];
      std::complex<double> acc = 0.0;
      for (int k = 0; k < N; ++k) acc += row[k] * f[k];
      coeffs[{n, m}] = acc.real();
    }
  }
  return coeffs;
}

double finite_difference(const std::function<double(double)>& fn, double at, double step,
                         bool richardson) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_difference: step must be positive");
  auto central = [&](double h) { return (fn(at + h) - fn(at - h)) / (2.0 * h); };
  const double d1 = central(step);
  if (!richardson) return d1;
  const double d2 = central(0.5 * step);
  return (4.0 * d2 - d1) / 3.0;
}

double parseval_sum(double f_x, double f_y, int max_index) {
  double sum = 0.0;
  for (int n = -max_index; n <= max_index; ++n)
    for (int m = -max_index; m <= max_index; ++m) {
      const double c = geometric_coefficient({n, m}, f_x, f_y);
      sum += c * c;
    }
  return sum;
}

bool all_passed(const std::vector<OracleReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const OracleReport& r) { return r.pass || r.informational; });
}

std::string to_json(const std::vector<OracleReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json o;
    o["name"] = r.name;
    o["computed"] = r.computed;
    o["reference"] = r.reference;
    o["deviation"] = r.deviation;
    o["tolerance"] = r.tolerance;
    o["deviation_kind"] = r.absolute ? "absolute" : "relative";
    o["pass"] = r.pass;
    o["informational"] = r.informational;
    if (!r.detail.empty()) o["detail"] = r.detail;
    arr.push_back(std::move(o));
  }
  return arr.dump(2);
}

namespace {

ChessboardSpec chessboard(CaseVariant v, double fx, double fy, double lx = 500e-9,
                          double ly = 500e-9) {
  ChessboardSpec s;
  s.lambda_x = lx;
  s.lambda_y = ly;
  s.f_x = fx;
  s.f_y = fy;
  s.materials = MaterialSetup::from_case({v});
  return s;
}

// Tolerance for derivative checks; scales with the quadrature tolerance.
double gradient_tolerance(const QuadratureSpec& q) { return std::max(1e-5, 10.0 * q.rel_tol); }
double gradient_step(const QuadratureSpec& q) {
  return 1e-4 * std::max(1.0, std::cbrt(q.rel_tol / 1e-8));
}

void closed_form_checks(const ValidationConfig& cfg, std::vector<OracleReport>& out) {
  const double H = 100e-9;
  const double k = 1.0 + cfg.corrupt_reference;
  struct Case {
    const char* name;
    HomogeneousContrasts c;
  };
  const Case cases[] = {
      {"closed_form_electric_attraction", {0.1, 0.1, 0.0, 0.0}},
      {"closed_form_electric_magnetic_repulsion", {0.0, 0.1, 0.1, 0.0}},
      {"closed_form_magnetic_attraction", {0.0, 0.0, 0.05, 0.2}},
  };
  for (const auto& c : cases) {
    const ModeTable t = build_mode_table(homogeneous_spec(c.c), H, cfg.params, cfg.quad, 1);
    out.push_back(relative_check(std::string(c.name) + "_pressure", normal_pressure(t, {}),
                                 k * homogeneous_closed_form(c.c, H), 1e-6));
    out.push_back(relative_check(std::string(c.name) + "_energy", energy_per_area(t, {}),
                                 k * homogeneous_closed_form_energy(c.c, H), 1e-6));
  }
  auto sign = relative_check("closed_form_repulsion_sign",
                             homogeneous_closed_form({0.0, 0.1, 0.1, 0.0}, H) > 0.0 ? 1.0 : 0.0,
                             1.0, 0.0);
  out.push_back(sign);

  // Mean-mode energy scales as 1/H^3.
  const HomogeneousContrasts e{0.1, 0.1, 0.0, 0.0};
  const auto spec = homogeneous_spec(e);
  const double e1 = energy_per_area(build_mode_table(spec, H, cfg.params, cfg.quad, 1), {});
  const double e2 = energy_per_area(build_mode_table(spec, 2 * H, cfg.params, cfg.quad, 1), {});
  out.push_back(relative_check("mean_mode_inverse_cube_scaling", e2 / e1, k * 0.125, 1e-6));

  // d/dH of the closed-form energy reproduces the closed-form pressure.
  const double fd = -finite_difference(
      [&](double h) { return homogeneous_closed_form_energy(e, h); }, H, 1e-4 * H, true);
  out.push_back(relative_check("closed_form_energy_derivative", fd,
                               k * homogeneous_closed_form(e, H), 1e-8));
}

void fourier_checks(std::vector<OracleReport>& out) {
  for (auto [fx, fy] : {std::pair{0.5, 0.5}, std::pair{0.75, 0.25}}) {
    ChessboardSpec s = chessboard(CaseVariant::EhMh_ElMl, fx, fy);
    const auto dft = dft_coefficients(s, 256, 8);
    double worst = 0.0;
    ModeIndex at{};
    for (const auto& [idx, v] : dft) {
      const double d = std::abs(v - geometric_coefficient(idx, fx, fy));
      if (d > worst) {
        worst = d;
        at = idx;
      }
    }
    const std::string tag = "f=(" + std::to_string(fx).substr(0, 4) + "," +
                            std::to_string(fy).substr(0, 4) + ")";
    auto r = absolute_check("dft_vs_analytic_coefficients " + tag, worst, 0.0, 1e-10);
    r.detail = "max deviation at (" + std::to_string(at.n) + "," + std::to_string(at.m) + ")";
    out.push_back(r);

    const double c00 = geometric_coefficient({0, 0}, fx, fy);
    out.push_back(absolute_check("parseval_box_1024 " + tag, parseval_sum(fx, fy, 1024), c00,
                                 1e-3));
    const double t16 = c00 - parseval_sum(fx, fy, 16);
    const double t32 = c00 - parseval_sum(fx, fy, 32);
    const double t64 = c00 - parseval_sum(fx, fy, 64);
    auto mono = relative_check("parseval_tail_shrinks " + tag,
                               (t16 > t32 && t32 > t64 && t64 > 0.0) ? 1.0 : 0.0, 1.0, 0.0);
    mono.detail = "tails 16/32/64: " + std::to_string(t16) + " " + std::to_string(t32) + " " +
                  std::to_string(t64);
    out.push_back(mono);

    double asym = 0.0;
    for (int n = -6; n <= 6; ++n)
      for (int m = -6; m <= 6; ++m) {
        const double c = geometric_coefficient({n, m}, fx, fy);
        asym = std::max({asym, std::abs(c - geometric_coefficient({-n, m}, fx, fy)),
                         std::abs(c - geometric_coefficient({n, -m}, fx, fy))});
      }
    out.push_back(absolute_check("coefficient_evenness " + tag, asym, 0.0, 0.0));
  }
}

void chessboard_checks(const ValidationConfig& cfg, std::vector<OracleReport>& out) {
  const double H = 100e-9;
  const Displacement d{0.2, 0.1};
  const ChessboardSpec spec = chessboard(CaseVariant::EhMh_ElMl, 0.5, 0.5);
  const ModeTable T = build_mode_table(spec, H, cfg.params, cfg.quad, cfg.workers);
  {
    auto r = relative_check("mode_sum_converged", T.converged() ? 1.0 : 0.0, 1.0, 0.0);
    r.detail = "shells=" + std::to_string(T.shells) + " modes=" + std::to_string(T.modes_used());
    out.push_back(r);
  }

  QuadratureSpec fixed = cfg.quad;
  fixed.fixed_shells = T.shells;
  const double hstep = gradient_step(cfg.quad);
  const double tol = gradient_tolerance(cfg.quad);

  const double dEdH = finite_difference(
      [&](double h) {
        return energy_per_area(build_mode_table(spec, h, cfg.params, fixed, cfg.workers), d);
      },
      H, hstep * H);
  out.push_back(relative_check("normal_force_vs_energy_fd", normal_pressure(T, d), -dEdH, tol));

  const LateralPressure lat = lateral_pressure(T, d);
  const double dEda = finite_difference(
      [&](double a) { return energy_per_area(T, {a, d.b}); }, d.a, hstep);
  const double dEdb = finite_difference(
      [&](double b) { return energy_per_area(T, {d.a, b}); }, d.b, hstep);
  out.push_back(relative_check("lateral_x_vs_energy_fd", lat.x, -dEda / spec.lambda_x, tol));
  out.push_back(relative_check("lateral_y_vs_energy_fd", lat.y, -dEdb / spec.lambda_y, tol));

  const double e0 = energy_per_area(T, d);
  out.push_back(relative_check("energy_period_a", energy_per_area(T, {d.a + 1.0, d.b}), e0, 1e-10));
  out.push_back(relative_check("energy_period_b", energy_per_area(T, {d.a, d.b + 1.0}), e0, 1e-10));
  out.push_back(relative_check("energy_evenness", energy_per_area(T, {-d.a, -d.b}), e0, 1e-10));
  const LateralPressure flip = lateral_pressure(T, {-d.a, -d.b});
  out.push_back(relative_check("lateral_odd_under_reflection", -flip.x, lat.x, 1e-10));

  double amp = 0.0;
  for (int i = 0; i <= 20; ++i) amp = std::max(amp, std::abs(lateral_pressure(T, {i / 20.0, 0.0}).x));
  const LateralPressure z0 = lateral_pressure(T, {0.0, 0.0});
  const LateralPressure zh = lateral_pressure(T, {0.5, 0.0});
  out.push_back(absolute_check("lateral_zero_at_alignment", std::hypot(z0.x, z0.y) / amp, 0.0, 1e-12));
  out.push_back(absolute_check("lateral_zero_at_half_period", std::abs(zh.x) / amp, 0.0, 1e-12));

  const double F0 = mean_mode_pressure(T);
  double reflect = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double a = i / 100.0;
    reflect = std::max(reflect, std::abs(normal_pressure(T, {a, 0.0}) / F0 -
                                         normal_pressure(T, {1.0 - a, 0.0}) / F0));
  }
  out.push_back(absolute_check("normal_ratio_reflection_symmetry", reflect, 0.0, 1e-9));

  double worst_energy_mode = 0.0;
  for (const auto& e : T.entries) worst_energy_mode = std::min(worst_energy_mode, e.integrals.energy.value);
  out.push_back(absolute_check("mode_integrals_non_negative", worst_energy_mode, 0.0, 0.0));

  {
    const ModeEntry* a = T.find({1, 3});
    const ModeEntry* b = T.find({3, 1});
    out.push_back(relative_check("exchange_symmetry_(1,3)_(3,1)", a ? a->integrals.energy.value : 0.0,
                                 b ? b->integrals.energy.value : 1.0, 1e-12));
  }

  for (CaseVariant v : {CaseVariant::EhMh_ElMl, CaseVariant::ElMh_EhMl}) {
    const ModeTable t = v == CaseVariant::EhMh_ElMl
                            ? T
                            : build_mode_table(chessboard(v, 0.5, 0.5), H, cfg.params, cfg.quad,
                                               cfg.workers);
    const double at0 = std::abs(normal_pressure(t, {0.0, 0.0}));
    const double at_half = std::abs(normal_pressure(t, {0.5, 0.0}));
    bool ok = true;
    for (int i = 1; i < 50; ++i) {
      const double f = std::abs(normal_pressure(t, {i / 100.0, 0.0}));
      ok = ok && f < at0 && f > at_half;
    }
    out.push_back(relative_check("alignment_extremum " + to_string(v), ok ? 1.0 : 0.0, 1.0, 0.0));
  }

  {
    ChessboardSpec same = spec;
    same.materials.lower = BodyMaterials{kElMl, kElMl};
    same.materials.upper = same.materials.lower;
    const ModeTable t = build_mode_table(same, H, cfg.params, cfg.quad, 1);
    double worst = 0.0;
    for (const auto& e : t.entries)
      if (!(e.rep.n == 0 && e.rep.m == 0)) worst = std::max(worst, std::abs(e.integrals.energy.value));
    out.push_back(absolute_check("homogeneous_collapse", worst, 0.0, 0.0));
    out.push_back(relative_check("homogeneous_displacement_independence",
                                 energy_per_area(t, {0.3, 0.7}), energy_per_area(t, {}), 1e-14));
  }

  {
    double prev = 1e300;
    bool ok = true;
    std::string trail;
    for (double h : {200e-9, 400e-9, 600e-9, 800e-9, 1000e-9}) {
      const ModeTable t = build_mode_table(spec, h, cfg.params, cfg.quad, cfg.workers);
      const double f0 = mean_mode_pressure(t);
      double dev = 0.0;
      for (int i = 0; i <= 50; ++i) dev = std::max(dev, std::abs(normal_pressure(t, {i / 100.0, 0.0}) / f0 - 1.0));
      ok = ok && dev < prev;
      prev = dev;
      trail += std::to_string(dev) + " ";
    }
    auto r = relative_check("normal_ratio_approaches_one_with_distance", ok ? 1.0 : 0.0, 1.0, 0.0);
    r.detail = trail;
    out.push_back(r);
  }
}

void material_checks(const ValidationConfig& cfg, std::vector<OracleReport>& out) {
  const DispersionParams& p = cfg.params;
  const auto r = p.ratios();
  out.push_back(relative_check("eps_lorentz_static", eps_at(kElMl, 0.0, p),
                               1.0 + (r.Omega_e / r.omega_e) * (r.Omega_e / r.omega_e), 1e-14));
  out.push_back(relative_check("mu_lorentz_static", mu_at(kEhMh, 0.0, p),
                               1.0 + (r.Omega_m / r.omega_m) * (r.Omega_m / r.omega_m), 1e-14));
  out.push_back(relative_check("cm_contrast_eps4", cm_contrast(4.0), 1.5, 1e-15));
  bool mono = true;
  double prev_e = 1e300, prev_m = 1e300, prev_d = 1e300;
  for (int i = 1; i <= 200; ++i) {
    const double z = p.omega_p * 1e-3 * std::pow(1.06, i);
    const double e = eps_at(kElMl, z, p), m = mu_at(kEhMh, z, p), d = eps_at(kEhMh, z, p);
    mono = mono && e < prev_e && m < prev_m && d < prev_d && e >= 1.0 && m >= 1.0 && d >= 1.0;
    prev_e = e, prev_m = m, prev_d = d;
  }
  out.push_back(relative_check("response_monotone_decreasing", mono ? 1.0 : 0.0, 1.0, 0.0));
}

}  // namespace

std::vector<OracleReport> convention_report(const ValidationConfig& cfg) {
  struct Point {
    const char* label;
    CaseVariant v;
    double fx, fy, H;
    Displacement d;
  };
  const Point points[] = {
      {"ehmh-elml f=0.5 H=100nm a=0", CaseVariant::EhMh_ElMl, 0.5, 0.5, 100e-9, {0.0, 0.0}},
      {"ehmh-elml f=(0.75,0.25) H=100nm a=0.25", CaseVariant::EhMh_ElMl, 0.75, 0.25, 100e-9, {0.25, 0.0}},
      {"elmh-ehml f=0.5 H=200nm a=0.2 b=0.1", CaseVariant::ElMh_EhMl, 0.5, 0.5, 200e-9, {0.2, 0.1}},
  };
  std::vector<OracleReport> out;
  for (const auto& pt : points) {
    const ModeTable t =
        build_mode_table(chessboard(pt.v, pt.fx, pt.fy), pt.H, cfg.params, cfg.quad, cfg.workers);
    const double full = energy_per_area(t, pt.d, SumConvention::FullLattice);
    const double restricted = energy_per_area(t, pt.d, SumConvention::PaperEpp);
    auto r = relative_check(std::string("convention_energy ") + pt.label, restricted, full, 0.0);
    r.informational = true;
    r.pass = true;
    r.detail = "computed = paper-epp, reference = full lattice";
    out.push_back(r);
  }
  return out;
}

std::vector<OracleReport> run_validation_suite(const ValidationConfig& cfg) {
  std::vector<OracleReport> out;
  material_checks(cfg, out);
  fourier_checks(out);
  closed_form_checks(cfg, out);
  chessboard_checks(cfg, out);
  for (auto& r : convention_report(cfg)) out.push_back(std::move(r));
  return out;
}

}  // namespace metacasimir::oracle
