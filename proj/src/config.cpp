#include "metacasimir/config.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "metacasimir/mode_table.hpp"

#ifndef METACASIMIR_VERSION
#define METACASIMIR_VERSION "0.0.0"
#endif

namespace metacasimir {

std::string version_string() { return "metacasimir " METACASIMIR_VERSION; }

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (case_name != "ehmh-elml" && case_name != "elmh-ehml" && case_name != "custom-constant")
    fail("case must be ehmh-elml, elmh-ehml or custom-constant");
  if (!(lambda_x_nm > 0.0) || !(lambda_y_nm > 0.0)) fail("lattice wavelengths must be positive");
  if (!(fx > 0.0 && fx < 1.0) || !(fy > 0.0 && fy < 1.0)) fail("fill fractions must lie in (0, 1)");
  if (H_nm.empty()) fail("at least one separation is required");
  for (double h : H_nm)
    if (!(h > 0.0) || !std::isfinite(h)) fail("separations must be positive");
  if (a_steps < 2 || b_steps < 2) fail("sweep grids need at least 2 points");
  if (!(tol > 0.0 && tol < 1.0)) fail("tol must lie in (0, 1)");
  if (nmax < 1) fail("nmax must be >= 1");
  if (workers < 0) fail("workers must be >= 0");
  if (!(omega_p > 0.0)) fail("omega_p must be positive");
  if (patch1.eps < 1.0 || patch2.eps < 1.0 || patch1.mu < 1.0 || patch2.mu < 1.0)
    fail("constant materials need eps, mu >= 1");
  if (!preset.empty() && preset != "a" && preset != "b" && preset != "c")
    fail("preset must be a, b or c");
  dispersion();  // throws on invalid ratios
}

ChessboardSpec RunConfig::chessboard() const {
  ChessboardSpec s;
  s.lambda_x = lambda_x_nm * 1e-9;
  s.lambda_y = lambda_y_nm * 1e-9;
  s.f_x = fx;
  s.f_y = fy;
  if (case_name == "custom-constant") {
    s.materials.lower = BodyMaterials{patch1, patch2};
    s.materials.upper = s.materials.lower;
    s.materials.resummation = resum ? Resummation::ClausiusMossotti : Resummation::Bare;
  } else {
    const CaseVariant v =
        case_name == "elmh-ehml" ? CaseVariant::ElMh_EhMl : CaseVariant::EhMh_ElMl;
    s.materials = MaterialSetup::from_case({v});
  }
  return s;
}

DispersionParams RunConfig::dispersion() const {
  return DispersionParams::from_ratios(ratios, omega_p);
}

QuadratureSpec RunConfig::quadrature() const {
  QuadratureSpec q;
  q.rel_tol = tol;
  q.max_shells = nmax;
  return q;
}

int RunConfig::resolved_workers() const { return workers > 0 ? workers : available_workers(); }

std::vector<double> RunConfig::unit_grid(int steps) {
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) g[i] = static_cast<double>(i) / (steps - 1);
  return g;
}

std::vector<double> RunConfig::a_grid() const {
  return a_values.empty() ? unit_grid(a_steps) : a_values;
}

void RunConfig::apply_preset(const std::string& name) {
  case_name = "ehmh-elml";
  H_nm = {100.0};
  lambda_x_nm = 500.0;
  lambda_y_nm = 500.0;
  if (name == "a") {
    fx = fy = 0.5;
  } else if (name == "b") {
    fx = 0.75;
    fy = 0.25;
  } else if (name == "c") {
    fx = 0.75;
    fy = 0.25;
    lambda_y_nm = 200.0;
  } else {
    throw std::invalid_argument("preset must be a, b or c");
  }
  preset = name;
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const {
  std::vector<std::pair<std::string, std::string>> kv;
  auto num = [&](const char* k, double v) { kv.emplace_back(k, format_number(v)); };
  kv.emplace_back("version", version_string());
  kv.emplace_back("case", case_name);
  num("lambda-x-nm", lambda_x_nm);
  num("lambda-y-nm", lambda_y_nm);
  num("fx", fx);
  num("fy", fy);
  num("omega-p", omega_p);
  num("Omega-D", ratios.Omega_D);
  num("gamma-D", ratios.gamma_D);
  num("Omega-e", ratios.Omega_e);
  num("omega-e", ratios.omega_e);
  num("gamma-e", ratios.gamma_e);
  num("Omega-m", ratios.Omega_m);
  num("omega-m", ratios.omega_m);
  num("gamma-m", ratios.gamma_m);
  if (case_name == "custom-constant") {
    num("eps1", patch1.eps);
    num("mu1", patch1.mu);
    num("eps2", patch2.eps);
    num("mu2", patch2.mu);
    kv.emplace_back("resum", resum ? "true" : "false");
  }
  std::string hs;
  for (double h : H_nm) hs += (hs.empty() ? "" : ", ") + format_number(h);
  kv.emplace_back("H-nm", "[" + hs + "]");
  if (!a_values.empty()) {
    std::string as;
    for (double a : a_values) as += (as.empty() ? "" : ", ") + format_number(a);
    kv.emplace_back("a", "[" + as + "]");
  } else {
    kv.emplace_back("a-steps", std::to_string(a_steps));
  }
  num("b", b);
  kv.emplace_back("b-steps", std::to_string(b_steps));
  if (!preset.empty()) kv.emplace_back("preset", preset);
  num("tol", tol);
  kv.emplace_back("nmax", std::to_string(nmax));
  kv.emplace_back("convention", to_string(convention));
  kv.emplace_back("workers", std::to_string(resolved_workers()));
  kv.emplace_back("format", format == OutputFormat::Csv ? "csv" : "json");
  return kv;
}

}  // namespace metacasimir
