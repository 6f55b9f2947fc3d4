#include "concnls/special.hpp"

#include <cmath>
#include <numbers>

#include "concnls/core.hpp"

namespace concnls::special {

using cplx = std::complex<double>;

cplx erf_series(cplx z) {
  // erf z = 2/sqrt(pi) sum (-1)^n z^{2n+1} / (n! (2n+1))
  const cplx z2 = z * z;
  cplx term = z;
  cplx sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cplx t = term / static_cast<double>(2 * n + 1);
    sum += t;
    if (std::abs(t) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

cplx erfcx(cplx z) {
  if (std::abs(z) < 1.5) return std::exp(z * z) * (1.0 - erf_series(z));
  if (z.real() < 0.0) throw ConfigError("erfcx continued fraction needs Re z >= 0");

  // erfc z = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
  constexpr double tiny = 1e-300;
  cplx f = z;
  cplx c = f;
  cplx d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = 0.5 * k;
    d = z + a * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = z + a / c;
    if (c == 0.0) c = tiny;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / (f * std::sqrt(std::numbers::pi));
}

namespace {

GaussLegendreRule<20> build_rule() {
  constexpr std::size_t n = 20;
  GaussLegendreRule<n> rule;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule<20>& gauss_legendre20() {
  static const GaussLegendreRule<20> rule = build_rule();
  return rule;
}

}  // namespace concnls::special
