#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace metacasimir::quad {

/// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
struct GaussKronrod15 {
  static constexpr std::array<double, 8> nodes{
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> kronrod_weights{
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Gauss weights for nodes[1], nodes[3], nodes[5], nodes[7].
  static constexpr std::array<double, 4> gauss_weights{
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

struct AdaptiveControl {
  double rel_tol = 1e-8;
  double abs_floor = 0.0;
  int max_subdivisions = 200;
  int initial_panels = 1;
};

template <std::size_t K>
struct AdaptiveResult {
  std::array<double, K> value{};
  std::array<double, K> error{};
  long evaluations = 0;
  int panels = 0;
  bool converged = false;
};

namespace detail {

template <std::size_t K>
struct Panel {
  double lo;
  double hi;
  std::array<double, K> value;
  std::array<double, K> error;
};

template <std::size_t K, class F>
Panel<K> apply_rule(F& f, double lo, double hi) {
  using R = GaussKronrod15;
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, K> kron{};
  std::array<double, K> gauss{};
  for (std::size_t i = 0; i < 8; ++i) {
    const double dx = half * R::nodes[i];
    const bool is_gauss = (i % 2 == 1);
    auto accumulate = [&](const std::array<double, K>& v, double scale) {
      for (std::size_t k = 0; k < K; ++k) {
        kron[k] += scale * R::kronrod_weights[i] * v[k];
        if (is_gauss) gauss[k] += scale * R::gauss_weights[i / 2] * v[k];
      }
    };
    if (i == 7) {
      accumulate(f(center), 1.0);
    } else {
      accumulate(f(center - dx), 1.0);
      accumulate(f(center + dx), 1.0);
    }
  }
  Panel<K> p{lo, hi, {}, {}};
  for (std::size_t k = 0; k < K; ++k) {
    p.value[k] = half * kron[k];
    p.error[k] = std::abs(half * (kron[k] - gauss[k]));
  }
  return p;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of a K-component integrand
/// over the finite interval [lo, hi]. The panel with the largest error
/// relative to its component tolerance is bisected until every component
/// satisfies error <= max(rel_tol |value|, abs_floor). Panel order and
/// summation order are fixed, so the result is deterministic.
/// The integrand is never evaluated at lo or hi.
template <std::size_t K, class F>
AdaptiveResult<K> integrate(F&& f, double lo, double hi, const AdaptiveControl& ctl) {
  std::vector<detail::Panel<K>> panels;
  const int n0 = std::max(1, ctl.initial_panels);
  panels.reserve(static_cast<std::size_t>(ctl.max_subdivisions + n0 + 1));
  for (int i = 0; i < n0; ++i) {
    const double a = lo + (hi - lo) * i / n0;
    const double b = (i + 1 == n0) ? hi : lo + (hi - lo) * (i + 1) / n0;
    panels.push_back(detail::apply_rule<K>(f, a, b));
  }

  AdaptiveResult<K> res;
  auto totals = [&]() {
    res.value.fill(0.0);
    res.error.fill(0.0);
    for (const auto& p : panels)
      for (std::size_t k = 0; k < K; ++k) {
        res.value[k] += p.value[k];
        res.error[k] += p.error[k];
      }
  };
  auto tolerance = [&](std::size_t k) {
    return std::max(ctl.rel_tol * std::abs(res.value[k]), ctl.abs_floor);
  };
  auto done = [&]() {
    for (std::size_t k = 0; k < K; ++k)
      if (!(res.error[k] <= tolerance(k))) return false;
    return true;
  };

  totals();
  int splits = 0;
  while (!done() && splits < ctl.max_subdivisions) {
    std::size_t worst = 0;
    double worst_badness = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double badness = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        const double tol = tolerance(k);
        const double b = tol > 0.0 ? panels[i].error[k] / tol : panels[i].error[k];
        badness = std::max(badness, b);
      }
      if (badness > worst_badness) {
        worst_badness = badness;
        worst = i;
      }
    }
    const double lo_w = panels[worst].lo;
    const double hi_w = panels[worst].hi;
    const double mid = 0.5 * (lo_w + hi_w);
    if (!(mid > lo_w && mid < hi_w)) break;  // interval exhausted
    panels[worst] = detail::apply_rule<K>(f, lo_w, mid);
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                  detail::apply_rule<K>(f, mid, hi_w));
    ++splits;
    totals();
  }
  res.converged = done();
  res.panels = static_cast<int>(panels.size());
  res.evaluations = 15L * (res.panels + splits);
  return res;
}

/// Scalar convenience wrapper.
template <class F>
AdaptiveResult<1> integrate_scalar(F&& f, double lo, double hi, const AdaptiveControl& ctl) {
  auto wrapped = [&](double x) { return std::array<double, 1>{f(x)}; };
  return integrate<1>(wrapped, lo, hi, ctl);
}

}  // namespace metacasimir::quad
