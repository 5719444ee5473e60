#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "metacasimir/constants.hpp"
#include "metacasimir/quadrature.hpp"

using namespace metacasimir;

TEST_CASE("Kronrod weights integrate constants exactly") {
  double sum = quad::GaussKronrod15::kronrod_weights[7];
  for (int i = 0; i < 7; ++i) sum += 2.0 * quad::GaussKronrod15::kronrod_weights[i];
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
  double g = quad::GaussKronrod15::gauss_weights[3];
  for (int i = 0; i < 3; ++i) g += 2.0 * quad::GaussKronrod15::gauss_weights[i];
  CHECK(g == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("polynomials up to degree 13 are exact on one panel") {
  quad::AdaptiveControl ctl;
  for (int k = 0; k <= 13; ++k) {
    const auto r = quad::integrate_scalar([k](double x) { return std::pow(x, k); }, 0.0, 1.0, ctl);
    CHECK(r.value[0] == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    CHECK(r.converged);
  }
}

TEST_CASE("semi-infinite integrals through x/(1-x)") {
  quad::AdaptiveControl ctl;
  ctl.rel_tol = 1e-12;
  // int_0^inf t^2 e^{-2t} dt = 1/4
  auto f = [](double x) {
    const double t = x / (1.0 - x);
    return t * t * std::exp(-2.0 * t) / ((1.0 - x) * (1.0 - x));
  };
  const auto r = quad::integrate_scalar(f, 0.0, 1.0, ctl);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.error[0] <= 1e-12 * 0.25);
}

TEST_CASE("endpoint singularity converges adaptively") {
  quad::AdaptiveControl ctl;
  ctl.rel_tol = 1e-9;
  ctl.max_subdivisions = 500;
  const auto r = quad::integrate_scalar([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, ctl);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("vector integrand converges on every component") {
  quad::AdaptiveControl ctl;
  ctl.rel_tol = 1e-11;
  auto f = [](double x) { return std::array<double, 3>{std::sin(x), std::exp(-x), x * x}; };
  const auto r = quad::integrate<3>(f, 0.0, kPi, ctl);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(r.value[1] == doctest::Approx(1.0 - std::exp(-kPi)).epsilon(1e-11));
  CHECK(r.value[2] == doctest::Approx(kPi * kPi * kPi / 3.0).epsilon(1e-11));
}

TEST_CASE("non-convergence is flagged with the best estimate") {
  quad::AdaptiveControl ctl;
  ctl.rel_tol = 1e-14;
  ctl.max_subdivisions = 16;
  const auto r = quad::integrate_scalar([](double x) { return std::log(x); }, 0.0, 1.0, ctl);
  CHECK_FALSE(r.converged);
  CHECK(r.value[0] == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(r.panels == 17);
  CHECK(r.evaluations == 15L * (17 + 16));
}

TEST_CASE("zero integrand terminates immediately") {
  quad::AdaptiveControl ctl;
  const auto r = quad::integrate_scalar([](double) { return 0.0; }, 0.0, 1.0, ctl);
  CHECK(r.converged);
  CHECK(r.value[0] == 0.0);
  CHECK(r.panels == 1);
}

TEST_CASE("endpoints are never evaluated") {
  quad::AdaptiveControl ctl;
  ctl.rel_tol = 1e-10;
  bool touched = false;
  quad::integrate_scalar(
      [&](double x) {
        touched = touched || x == 0.0 || x == 1.0;
        return std::log(x) * std::log(1.0 - x);
      },
      0.0, 1.0, ctl);
  CHECK_FALSE(touched);
}

TEST_CASE("deterministic") {
  quad::AdaptiveControl ctl;
  auto f = [](double x) { return std::exp(-30.0 * (x - 0.3) * (x - 0.3)) + std::sqrt(x); };
  const auto a = quad::integrate_scalar(f, 0.0, 1.0, ctl);
  const auto b = quad::integrate_scalar(f, 0.0, 1.0, ctl);
  CHECK(a.value[0] == b.value[0]);
  CHECK(a.error[0] == b.error[0]);
}
