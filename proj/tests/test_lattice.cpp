#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "metacasimir/constants.hpp"
#include "metacasimir/lattice.hpp"
#include "metacasimir/oracle.hpp"

using namespace metacasimir;

namespace {

ChessboardSpec board(double fx, double fy) {
  ChessboardSpec s;
  s.f_x = fx;
  s.f_y = fy;
  return s;
}

// Mean of the indicator by midpoint sampling on an n x n grid.
double sampled_mean(const ChessboardSpec& s, int n) {
  long count = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      count += profile_value(s, (j + 0.5) / n * s.lambda_x, (k + 0.5) / n * s.lambda_y) == 2;
  return static_cast<double>(count) / (static_cast<double>(n) * n);
}

}  // namespace

TEST_CASE("sin_pi has exact zeros at integers") {
  CHECK(sin_pi(0.0) == 0.0);
  CHECK(sin_pi(1.0) == 0.0);
  CHECK(sin_pi(-3.0) == 0.0);
  CHECK(sin_pi(2.0 * 0.5) == 0.0);
  CHECK(sin_pi(4.0 * 0.75) == 0.0);
  CHECK(sin_pi(0.5) == doctest::Approx(1.0));
  CHECK(sin_pi(-0.5) == doctest::Approx(-1.0));
  CHECK(sin_pi(2.25) == doctest::Approx(std::sin(kPi * 0.25)));
}

TEST_CASE("geometric_coefficient examples") {
  CHECK(geometric_coefficient({1, 1}, 0.5, 0.5) == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-15));
  CHECK(geometric_coefficient({1, 1}, 0.5, 0.5) == doctest::Approx(0.202642).epsilon(1e-6));
  CHECK(geometric_coefficient({2, 1}, 0.5, 0.5) == 0.0);
  CHECK(geometric_coefficient({0, 0}, 0.75, 0.25) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(geometric_coefficient({1, 0}, 0.5, 0.5) == 0.0);
  CHECK(geometric_coefficient({0, 1}, 0.75, 0.25) ==
        doctest::Approx(0.5 * std::sin(0.25 * kPi) / kPi).epsilon(1e-14));
  CHECK(geometric_coefficient({0, 1}, 0.75, 0.25) == doctest::Approx(0.112540).epsilon(1e-5));
}

TEST_CASE("off-axis coefficients match the product-of-sines formula") {
  for (double fx : {0.3, 0.5, 0.75})
    for (double fy : {0.25, 0.5, 0.6})
      for (int n : {-3, -1, 1, 2, 5})
        for (int m : {-2, 1, 3}) {
          const double product = 2.0 * std::sin(n * kPi * fx) * std::sin(m * kPi * fy) / (m * n * kPi * kPi);
          CHECK(geometric_coefficient({n, m}, fx, fy) == doctest::Approx(product).epsilon(1e-12));
        }
}

TEST_CASE("coefficients are even in n and m separately") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> f(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    const double fx = f(rng), fy = f(rng);
    for (int n = 0; n <= 6; ++n)
      for (int m = 0; m <= 6; ++m) {
        const double c = geometric_coefficient({n, m}, fx, fy);
        CHECK(geometric_coefficient({-n, m}, fx, fy) == c);
        CHECK(geometric_coefficient({n, -m}, fx, fy) == c);
        CHECK(geometric_coefficient({-n, -m}, fx, fy) == c);
      }
  }
}

TEST_CASE("profile_value phase convention") {
  const auto s = board(0.5, 0.5);
  CHECK(profile_value(s, 0.0, 0.0) == 2);
  CHECK(profile_value(s, 0.5 * s.lambda_x, 0.0) == 1);
  CHECK(profile_value(s, 0.5 * s.lambda_x, 0.5 * s.lambda_y) == 2);
  CHECK(profile_value(s, 0.0, 0.5 * s.lambda_y) == 1);
  CHECK(profile_value(s, 3.0 * s.lambda_x, -7.0 * s.lambda_y) == 2);  // wrapped
}

TEST_CASE("indicator cell average matches C_00") {
  const auto s = board(0.75, 0.25);
  CHECK(std::abs(sampled_mean(s, 1024) - 0.375) <= 1.0 / 1024);
  CHECK(std::abs(sampled_mean(board(0.5, 0.5), 512) - 0.5) <= 1.0 / 512);
}

TEST_CASE("grid DFT reproduces the analytic table") {
  for (auto [fx, fy] : {std::pair{0.5, 0.5}, std::pair{0.75, 0.25}, std::pair{0.375, 0.625}}) {
    const auto dft = oracle::dft_coefficients(board(fx, fy), 256, 8);
    for (const auto& [idx, v] : dft)
      CHECK(std::abs(v - geometric_coefficient(idx, fx, fy)) <= 1e-10);
  }
}

TEST_CASE("Parseval: the truncated sum approaches C_00 from below") {
  for (auto [fx, fy] : {std::pair{0.5, 0.5}, std::pair{0.75, 0.25}}) {
    const double c00 = geometric_coefficient({0, 0}, fx, fy);
    double prev_tail = c00;
    for (int N : {8, 16, 32, 64, 128}) {
      const double tail = c00 - oracle::parseval_sum(fx, fy, N);
      CHECK(tail > 0.0);
      CHECK(tail < prev_tail);
      prev_tail = tail;
    }
    // The tail decays like 1/N; at N = 64 it is about 2 / (pi^2 64) of the
    // per-axis pulse power times the transverse sum, i.e. 3.16e-3.
    CHECK(c00 - oracle::parseval_sum(fx, fy, 64) == doctest::Approx(3.156e-3).epsilon(2e-3));
    CHECK(std::abs(c00 - oracle::parseval_sum(fx, fy, 512)) < 1e-3);
  }
}

TEST_CASE("mode_amplitudes") {
  const DispersionParams P = DispersionParams::defaults();
  SUBCASE("unit contrast difference reproduces C_nm") {
    ChessboardSpec s = board(0.5, 0.5);
    s.materials = MaterialSetup::homogeneous({1.0, 1.0}, {1.0, 1.0});
    s.materials.lower = BodyMaterials{ConstantMaterial{1.0, 1.0}, ConstantMaterial{2.0, 2.0}};
    s.materials.upper = s.materials.lower;
    const auto amp = mode_amplitudes(s, {1, 1}, 1e15, P);
    CHECK(amp.lower.A == doctest::Approx(2.0 / (kPi * kPi)));
    CHECK(amp.lower.B == doctest::Approx(2.0 / (kPi * kPi)));
    const auto mean = mode_amplitudes(s, {0, 0}, 1e15, P);
    CHECK(mean.lower.A == doctest::Approx(0.5));
  }
  SUBCASE("(0, 1) axis mode with f = (0.75, 0.25)") {
    ChessboardSpec s = board(0.75, 0.25);
    s.materials.lower = BodyMaterials{ConstantMaterial{1.0, 1.0}, ConstantMaterial{2.0, 1.0}};
    s.materials.upper = s.materials.lower;
    s.materials.resummation = Resummation::Bare;
    CHECK(mode_amplitudes(s, {0, 1}, 1e15, P).lower.A == doctest::Approx(0.112540).epsilon(1e-5));
  }
  SUBCASE("identical patches collapse to the mean mode") {
    ChessboardSpec s = board(0.75, 0.25);
    s.materials.lower = BodyMaterials{kElMh, kElMh};
    s.materials.upper = s.materials.lower;
    const double z = 0.2 * P.omega_p;
    for (int n = -3; n <= 3; ++n)
      for (int m = -3; m <= 3; ++m) {
        const auto a = mode_amplitudes(s, {n, m}, z, P);
        if (n == 0 && m == 0) {
          CHECK(a.lower.A == doctest::Approx(cm_contrast(eps_at(kElMh, z, P))));
          CHECK(a.lower.B == doctest::Approx(mu_at(kElMh, z, P) - 1.0));
        } else {
          CHECK(a.lower.A == 0.0);
          CHECK(a.lower.B == 0.0);
        }
      }
  }
  SUBCASE("mean mode is the cell-averaged resummed contrast") {
    ChessboardSpec s = board(0.75, 0.25);
    const double z = 0.3 * P.omega_p;
    const auto pc = patch_contrasts(CaseAssignment{}, z, P);
    const auto a = mode_amplitudes(s, {0, 0}, z, P);
    CHECK(a.lower.A == doctest::Approx(0.625 * pc.eps_bar[0] + 0.375 * pc.eps_bar[1]));
    CHECK(a.upper.A == a.lower.A);
  }
}

TEST_CASE("spec validation") {
  ChessboardSpec s;
  CHECK_NOTHROW(s.validate());
  s.f_x = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.lambda_y = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
