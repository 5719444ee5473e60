#include "metacasimir/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "metacasimir/oracle.hpp"

namespace metacasimir {

namespace {

ModeTable table_for(const RunConfig& cfg, double H_nm) {
  const ModeTable t = build_mode_table(cfg.chessboard(), H_nm * 1e-9, cfg.dispersion(),
                                       cfg.quadrature(), cfg.resolved_workers());
  require_converged(t, {}, cfg.convention);
  return t;
}

}  // namespace

DataTable normal_sweep(const RunConfig& cfg) {
  DataTable out{{"a", "H_nm", "F_normal_Pa", "F0_Pa", "ratio"}, {}};
  const auto grid = cfg.a_grid();
  for (double h : cfg.H_nm) {
    const ModeTable t = table_for(cfg, h);
    const double f0 = mean_mode_pressure(t);
    for (double a : grid) {
      const double f = normal_pressure(t, {a, cfg.b}, cfg.convention);
      out.rows.push_back({a, h, f, f0, f / f0});
    }
  }
  return out;
}

DataTable lateral_sweep(const RunConfig& cfg) {
  DataTable out{{"a", "H_nm", "F_lat_x_Pa"}, {}};
  const auto grid = cfg.a_grid();
  for (double h : cfg.H_nm) {
    const ModeTable t = table_for(cfg, h);
    for (double a : grid) out.rows.push_back({a, h, lateral_pressure(t, {a, cfg.b}).x});
  }
  return out;
}

DataTable vector_field(const RunConfig& cfg) {
  DataTable out{{"a", "b", "Fx_Pa", "Fy_Pa"}, {}};
  const ModeTable t = table_for(cfg, cfg.H_nm.front());
  const auto ga = RunConfig::unit_grid(cfg.b_steps);
  for (double a : ga)
    for (double b : ga) {
      const LateralPressure f = lateral_pressure(t, {a, b});
      out.rows.push_back({a, b, f.x, f.y});
    }
  return out;
}

DataTable homogeneous_comparison(const RunConfig& cfg) {
  DataTable out{{"H_nm", "quadrature_Pa", "closed_form_Pa", "rel_deviation"}, {}};
  const ChessboardSpec spec = homogeneous_spec(cfg.contrasts);
  for (double h : cfg.H_nm) {
    const ModeTable t =
        build_mode_table(spec, h * 1e-9, cfg.dispersion(), cfg.quadrature(), 1);
    require_converged(t, {}, SumConvention::FullLattice);
    const double q = normal_pressure(t, {});
    const double c = homogeneous_closed_form(cfg.contrasts, h * 1e-9);
    const double dev = c == 0.0 ? std::abs(q) : std::abs(q - c) / std::abs(c);
    out.rows.push_back({h, q, c, dev});
  }
  return out;
}

void write_table(const DataTable& table, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["version"] = version_string();
    nlohmann::ordered_json conf = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.describe()) conf[k] = v;
    j["config"] = conf;
    j["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) rows.push_back(r);
    j["rows"] = rows;
    os << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : cfg.describe()) os << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i]);
    os << '\n';
  }
}

namespace {

// Writes through a temporary file so a failed run never leaves a partial output.
template <class Produce>
int emit(const RunConfig& cfg, std::ostream& out, Produce&& produce) {
  if (cfg.out.empty()) {
    std::ostringstream buf;
    produce(buf);
    out << buf.str();
    return kExitOk;
  }
  const std::filesystem::path target(cfg.out);
  const std::filesystem::path partial = target.string() + ".partial";
  try {
    {
      std::ofstream f(partial, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot open output " + partial.string());
      produce(f);
    }
    std::filesystem::rename(partial, target);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(partial, ec);
    throw;
  }
  return kExitOk;
}

void print_reports(const std::vector<oracle::OracleReport>& reports, std::ostream& os) {
  for (const auto& r : reports) {
    const char* tag = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
    os << tag << "  " << r.name << "  computed=" << format_number(r.computed)
       << " reference=" << format_number(r.reference)
       << " deviation=" << format_number(r.deviation) << (r.absolute ? " (abs)" : " (rel)")
       << " tol=" << format_number(r.tolerance);
    if (!r.detail.empty()) os << "  [" << r.detail << "]";
    os << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Casimir-Lifshitz forces between chessboard-patterned magneto-dielectric media",
               "metacasimir"};
  app.set_version_flag("--version", version_string());
  app.set_config("--config", "", "TOML key = value file; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  std::string convention = "full";
  std::string format = "csv";
  std::vector<double> a_values;

  app.add_option("--case", cfg.case_name, "ehmh-elml | elmh-ehml | custom-constant")
      ->check(CLI::IsMember({"ehmh-elml", "elmh-ehml", "custom-constant"}));
  app.add_option("--H-nm", cfg.H_nm, "separation in nm (repeatable)")->delimiter(',');
  app.add_option("--lambda-x-nm", cfg.lambda_x_nm, "lattice wavelength along x (nm)");
  app.add_option("--lambda-y-nm", cfg.lambda_y_nm, "lattice wavelength along y (nm)");
  app.add_option("--fx", cfg.fx, "fill fraction along x");
  app.add_option("--fy", cfg.fy, "fill fraction along y");
  app.add_option("--a", a_values, "fixed displacement(s) a instead of the a grid")->delimiter(',');
  app.add_option("--b", cfg.b, "displacement b (a sweeps)");
  app.add_option("--a-steps", cfg.a_steps, "points of the a grid over [0, 1]");
  app.add_option("--b-steps", cfg.b_steps, "points per axis of the vector-field grid");
  app.add_option("--preset", cfg.preset, "vector-field preset a | b | c")
      ->check(CLI::IsMember({"a", "b", "c"}));
  app.add_option("--tol", cfg.tol, "per-mode relative tolerance and shell threshold");
  app.add_option("--nmax", cfg.nmax, "maximum shell max(|n|, |m|)");
  app.add_option("--convention", convention, "full | paper-epp")
      ->check(CLI::IsMember({"full", "paper-epp"}));
  app.add_option("--workers", cfg.workers, "worker threads (0: all available)");
  app.add_option("--out", cfg.out, "output path (default: stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  app.add_option("--omega-p", cfg.omega_p, "reference frequency (rad/s)");
  app.add_option("--Omega-D", cfg.ratios.Omega_D, "Drude strength / omega_p");
  app.add_option("--gamma-D", cfg.ratios.gamma_D, "Drude dissipation / omega_p");
  app.add_option("--Omega-e", cfg.ratios.Omega_e, "dielectric strength / omega_p");
  app.add_option("--omega-e", cfg.ratios.omega_e, "dielectric resonance / omega_p");
  app.add_option("--gamma-e", cfg.ratios.gamma_e, "dielectric dissipation / omega_p");
  app.add_option("--Omega-m", cfg.ratios.Omega_m, "magnetic strength / omega_p");
  app.add_option("--omega-m", cfg.ratios.omega_m, "magnetic resonance / omega_p");
  app.add_option("--gamma-m", cfg.ratios.gamma_m, "magnetic dissipation / omega_p");

  app.add_option("--eps1", cfg.patch1.eps, "custom-constant: patch 1 permittivity");
  app.add_option("--mu1", cfg.patch1.mu, "custom-constant: patch 1 permeability");
  app.add_option("--eps2", cfg.patch2.eps, "custom-constant: patch 2 permittivity");
  app.add_option("--mu2", cfg.patch2.mu, "custom-constant: patch 2 permeability");
  app.add_flag("--resum", cfg.resum, "custom-constant: resum the dielectric contrast");

  app.add_option("--deps-d", cfg.contrasts.eps_d, "homogeneous: lower dielectric contrast");
  app.add_option("--deps-u", cfg.contrasts.eps_u, "homogeneous: upper dielectric contrast");
  app.add_option("--dmu-d", cfg.contrasts.mu_d, "homogeneous: lower magnetic contrast");
  app.add_option("--dmu-u", cfg.contrasts.mu_u, "homogeneous: upper magnetic contrast");

  app.add_option("--corrupt-reference", cfg.corrupt_reference,
                 "validate: relative corruption of closed-form references (negative control)")
      ->group("Testing");

  auto* normal = app.add_subcommand("normal-sweep", "normal pressure and F/F0 over a");
  auto* lateral = app.add_subcommand("lateral-sweep", "lateral pressure along x over a");
  auto* field = app.add_subcommand("vector-field", "lateral pressure vector field over (a, b)");
  auto* homog = app.add_subcommand("homogeneous", "closed form vs quadrature, uniform media");
  auto* validate = app.add_subcommand("validate", "run the oracle validation suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    cfg.convention = convention == "paper-epp" ? SumConvention::PaperEpp : SumConvention::FullLattice;
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    cfg.a_values = a_values;
    if (!cfg.preset.empty()) {
      // Explicit geometry flags still win over the preset.
      const RunConfig given = cfg;
      cfg.apply_preset(cfg.preset);
      auto keep = [&](const char* opt, auto& field, const auto& value) {
        if (app.count(opt) > 0) field = value;
      };
      keep("--H-nm", cfg.H_nm, given.H_nm);
      keep("--fx", cfg.fx, given.fx);
      keep("--fy", cfg.fy, given.fy);
      keep("--lambda-x-nm", cfg.lambda_x_nm, given.lambda_x_nm);
      keep("--lambda-y-nm", cfg.lambda_y_nm, given.lambda_y_nm);
      keep("--case", cfg.case_name, given.case_name);
    }
    cfg.validate();
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*normal) return emit(cfg, out, [&](std::ostream& os) { write_table(normal_sweep(cfg), cfg, os); });
    if (*lateral) return emit(cfg, out, [&](std::ostream& os) { write_table(lateral_sweep(cfg), cfg, os); });
    if (*field) return emit(cfg, out, [&](std::ostream& os) { write_table(vector_field(cfg), cfg, os); });
    if (*homog) {
      const DataTable t = homogeneous_comparison(cfg);
      emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg, os); });
      bool ok = true;
      for (const auto& r : t.rows) ok = ok && r[3] <= kHomogeneousTolerance;
      if (!ok) err << "homogeneous comparison exceeded relative tolerance 1e-6\n";
      return ok ? kExitOk : kExitValidation;
    }
    if (*validate) {
      oracle::ValidationConfig vc;
      vc.params = cfg.dispersion();
      vc.quad = cfg.quadrature();
      vc.workers = cfg.resolved_workers();
      vc.corrupt_reference = cfg.corrupt_reference;
      const auto reports = oracle::run_validation_suite(vc);
      const bool ok = oracle::all_passed(reports);
      if (cfg.format == OutputFormat::Json || !cfg.out.empty()) {
        emit(cfg, out, [&](std::ostream& os) { os << oracle::to_json(reports) << '\n'; });
        if (!cfg.out.empty()) print_reports(reports, out);
      } else {
        print_reports(reports, out);
      }
      out << (ok ? "validation passed" : "validation FAILED") << '\n';
      return ok ? kExitOk : kExitValidation;
    }
  } catch (const NonConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace metacasimir
