#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "metacasimir/commands.hpp"

using namespace metacasimir;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Data rows of a CSV document, skipping '#' comments and the column header.
std::vector<std::vector<double>> csv_rows(const std::string& text, std::vector<std::string>* header = nullptr) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      if (header) {
        std::istringstream cols(line);
        std::string c;
        while (std::getline(cols, c, ',')) header->push_back(c);
      }
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string c;
    while (std::getline(cells, c, ',')) row.push_back(std::stod(c));
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "metacasimir_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("normal-sweep CSV layout and header") {
  const auto r = run({"normal-sweep", "--H-nm", "100", "--H-nm", "500", "--a-steps", "11"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# version = metacasimir", 0) == 0);
  CHECK(r.out.find("# case = ehmh-elml") != std::string::npos);
  CHECK(r.out.find("# convention = full") != std::string::npos);
  std::vector<std::string> header;
  const auto rows = csv_rows(r.out, &header);
  CHECK(header == std::vector<std::string>{"a", "H_nm", "F_normal_Pa", "F0_Pa", "ratio"});
  REQUIRE(rows.size() == 22);
  CHECK(rows[0][1] == 100.0);  // H outer, a inner
  CHECK(rows[10][0] == 1.0);
  CHECK(rows[11][1] == 500.0);
  // reflection symmetry and large-H suppression
  for (int i = 0; i < 11; ++i) {
    CHECK(rows[i][4] == doctest::Approx(rows[10 - i][4]).epsilon(1e-9));
    CHECK(std::abs(rows[11 + i][4] - 1.0) < 5e-3);
    CHECK(rows[i][2] / rows[i][3] == doctest::Approx(rows[i][4]).epsilon(1e-11));
  }
  // 12 significant digits, '.' decimal, scientific notation
  CHECK(r.out.find("1.00000000000e+02") != std::string::npos);
}

TEST_CASE("quarter fill at 100 nm modulates the force by tens of percent") {
  const auto r = run({"normal-sweep", "--fx", "0.75", "--fy", "0.25", "--H-nm", "100", "--a-steps", "21"});
  REQUIRE(r.code == 0);
  double worst = 0.0;
  for (const auto& row : csv_rows(r.out)) worst = std::max(worst, std::abs(row[4] - 1.0));
  CHECK(worst > 0.1);
  CHECK(worst < 1.0);
}

TEST_CASE("lateral-sweep zeros and restoring sign") {
  const auto r = run({"lateral-sweep", "--H-nm", "100", "--a-steps", "101"});
  REQUIRE(r.code == 0);
  std::vector<std::string> header;
  const auto rows = csv_rows(r.out, &header);
  CHECK(header == std::vector<std::string>{"a", "H_nm", "F_lat_x_Pa"});
  REQUIRE(rows.size() == 101);
  double amp = 0.0;
  for (const auto& row : rows) amp = std::max(amp, std::abs(row[2]));
  CHECK(std::abs(rows[0][2]) <= 1e-12 * amp);
  CHECK(std::abs(rows[50][2]) <= 1e-12 * amp);
  CHECK(std::abs(rows[100][2]) <= 1e-12 * amp);
  CHECK(rows[1][2] < 0.0);  // pulls back toward a = 0
}

TEST_CASE("vector-field symmetry and presets") {
  SUBCASE("square cell: Fx(a, b) = Fy(b, a) and zeros at symmetry points") {
    const auto r = run({"vector-field", "--H-nm", "100", "--b-steps", "5"});
    REQUIRE(r.code == 0);
    std::vector<std::string> header;
    const auto rows = csv_rows(r.out, &header);
    CHECK(header == std::vector<std::string>{"a", "b", "Fx_Pa", "Fy_Pa"});
    REQUIRE(rows.size() == 25);
    std::map<std::pair<double, double>, std::pair<double, double>> field;
    double amp = 0.0;
    for (const auto& row : rows) {
      field[{row[0], row[1]}] = {row[2], row[3]};
      amp = std::max({amp, std::abs(row[2]), std::abs(row[3])});
    }
    for (const auto& [ab, f] : field) {
      const auto& swapped = field.at({ab.second, ab.first});
      CHECK(f.first == doctest::Approx(swapped.second).epsilon(1e-12));
    }
    for (auto p : {std::pair{0.0, 0.0}, std::pair{0.5, 0.5}}) {
      CHECK(std::abs(field.at(p).first) <= 1e-12 * amp);
      CHECK(std::abs(field.at(p).second) <= 1e-12 * amp);
    }
  }
  SUBCASE("preset c breaks exchange symmetry") {
    const auto r = run({"vector-field", "--preset", "c", "--b-steps", "5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# lambda-y-nm = 2.00000000000e+02") != std::string::npos);
    const auto rows = csv_rows(r.out);
    std::map<std::pair<double, double>, std::pair<double, double>> field;
    for (const auto& row : rows) field[{row[0], row[1]}] = {row[2], row[3]};
    const auto a = field.at({0.25, 0.5}).first;
    const auto b = field.at({0.5, 0.25}).second;
    CHECK(std::abs(a - b) > 1e-3 * std::max(std::abs(a), std::abs(b)));
  }
  SUBCASE("explicit flags override a preset") {
    const auto r = run({"vector-field", "--preset", "c", "--lambda-y-nm", "400", "--b-steps", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# lambda-y-nm = 4.00000000000e+02") != std::string::npos);
  }
  for (const char* p : {"a", "b"}) CHECK(run({"vector-field", "--preset", p, "--b-steps", "3"}).code == 0);
}

TEST_CASE("homogeneous and validate subcommands") {
  const auto h = run({"homogeneous"});
  CHECK(h.code == 0);
  std::vector<std::string> header;
  const auto rows = csv_rows(h.out, &header);
  CHECK(header == std::vector<std::string>{"H_nm", "quadrature_Pa", "closed_form_Pa", "rel_deviation"});
  for (const auto& row : rows) CHECK(row[3] <= 1e-6);

  const auto v = run({"validate"});
  CHECK(v.code == 0);
  CHECK(v.out.find("validation passed") != std::string::npos);
  const auto bad = run({"validate", "--corrupt-reference", "1e-3"});
  CHECK(bad.code == 4);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"normal-sweep", "--fx", "1.5"}).code == 2);
  CHECK(run({"normal-sweep", "--H-nm", "-10"}).code == 2);
  CHECK(run({"normal-sweep", "--case", "gold"}).code == 2);
  CHECK(run({"normal-sweep", "--tol", "0"}).code == 2);
  CHECK(run({"normal-sweep", "--config", "/nonexistent/run.toml"}).code == 2);
  const auto nc = run({"normal-sweep", "--nmax", "2", "--H-nm", "20", "--a", "0"});
  CHECK(nc.code == 3);
  CHECK(nc.err.find("numerical failure") != std::string::npos);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("numerical failure leaves no partial file") {
  const auto path = scratch("fail.csv");
  fs::remove(path);
  const auto r = run({"normal-sweep", "--nmax", "2", "--H-nm", "20", "--a", "0", "--out", path.string()});
  CHECK(r.code == 3);
  CHECK_FALSE(fs::exists(path));
  CHECK_FALSE(fs::exists(path.string() + ".partial"));
}

TEST_CASE("output files are byte-identical across runs") {
  const auto p1 = scratch("a.csv"), p2 = scratch("b.csv");
  const std::vector<std::string> base{"lateral-sweep", "--fx", "0.75", "--fy", "0.25", "--a-steps", "17",
                                      "--workers", "2"};
  auto a1 = base, a2 = base;
  a1.insert(a1.end(), {"--out", p1.string()});
  a2.insert(a2.end(), {"--out", p2.string()});
  REQUIRE(run(a1).code == 0);
  REQUIRE(run(a2).code == 0);
  CHECK(slurp(p1) == slurp(p2));
  CHECK_FALSE(slurp(p1).empty());
}

TEST_CASE("worker count does not change the numbers") {
  const auto one = run({"normal-sweep", "--a-steps", "9", "--H-nm", "150", "--workers", "1"});
  const auto many = run({"normal-sweep", "--a-steps", "9", "--H-nm", "150", "--workers", "4"});
  REQUIRE(one.code == 0);
  REQUIRE(many.code == 0);
  CHECK(csv_rows(one.out) == csv_rows(many.out));
}

TEST_CASE("config file with flag override") {
  const auto cfg = scratch("run.toml");
  {
    std::ofstream f(cfg);
    f << "# figure recipe\n"
         "case = \"elmh-ehml\"\n"
         "H-nm = [100, 300]\n"
         "fx = 0.75\n"
         "fy = 0.25\n"
         "a-steps = 5\n"
         "convention = \"paper-epp\"\n";
  }
  const auto r = run({"normal-sweep", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# case = elmh-ehml") != std::string::npos);
  CHECK(r.out.find("# convention = paper-epp") != std::string::npos);
  CHECK(csv_rows(r.out).size() == 10);

  const auto o = run({"normal-sweep", "--config", cfg.string(), "--a-steps", "3", "--H-nm", "200"});
  REQUIRE(o.code == 0);
  const auto rows = csv_rows(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][1] == 200.0);
  CHECK(o.out.find("# fx = 7.50000000000e-01") != std::string::npos);
}

TEST_CASE("JSON output") {
  const auto r = run({"lateral-sweep", "--a-steps", "5", "--H-nm", "100", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["version"].get<std::string>().rfind("metacasimir", 0) == 0);
  CHECK(j["columns"] == nlohmann::json::array({"a", "H_nm", "F_lat_x_Pa"}));
  CHECK(j["rows"].size() == 5);
  CHECK(j["config"].contains("case"));
}

TEST_CASE("custom constant patches") {
  const auto r = run({"normal-sweep", "--case", "custom-constant", "--eps1", "1.2", "--eps2", "1.2",
                      "--a-steps", "5", "--H-nm", "100"});
  REQUIRE(r.code == 0);
  for (const auto& row : csv_rows(r.out)) CHECK(row[4] == doctest::Approx(1.0).epsilon(1e-14));
}
