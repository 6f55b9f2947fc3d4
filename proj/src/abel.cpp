#include "concnls/abel.hpp"

#include <cmath>
#include <numbers>

#include "concnls/propagator.hpp"
#include "concnls/special.hpp"

namespace concnls {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{-i pi/4} / sqrt(4 pi): U(tau, dy) = kPrefactor * tau^{-1/2} * exp(i dy^2 / 4 tau).
const cplx kPrefactor = std::polar(1.0 / std::sqrt(4.0 * kPi), -kPi / 4.0);
const cplx kEighth = std::polar(1.0, -kPi / 4.0);

// Antiderivatives in v = sqrt(tau), with a = dy^2/4 and b = -i a:
//   G0(v) = int e^{-b/v^2} dv     = v e^{-b/v^2} - sqrt(pi b) erfc(sqrt(b)/v)
//   G2(v) = int v^2 e^{-b/v^2} dv = (v^3 e^{-b/v^2} - 2 b G0(v)) / 3
// normalised so that G0(0) = G2(0) = 0. Then
//   int tau^{-1/2} e^{ia/tau} dtau = 2 G0,  int tau^{1/2} e^{ia/tau} dtau = 2 G2.
struct Antiderivative {
  cplx g0;
  cplx g2;
};

Antiderivative antiderivative(double a, double v) {
  if (v == 0.0) return {};
  const double sqrt_a = std::sqrt(a);
  const cplx z = (sqrt_a / v) * kEighth;
  const cplx e = std::polar(1.0, a / (v * v));
  const double v3 = v * v * v;
  const double r = std::abs(z);

  if (r >= 8.0) {
    // Asymptotic series of erfcx; avoids the cancellation in v - sqrt(pi b) erfcx(z).
    //   G0 = e v   sum_{n>=1} c_n z^{-2n},   c_n = -(-1)^n (2n-1)!! / 2^n
    //   G2 = e v^3 sum_{n>=1} -(2/3) c_{n+1} z^{-2n}
    const cplx inv2 = 1.0 / (z * z);
    cplx pw = inv2;
    double c = 0.5;  // c_1
    cplx s0 = 0.0;
    cplx s2 = 0.0;
    double last = INFINITY;
    for (int n = 1; n < 60; ++n) {
      const double c_next = -c * (2.0 * n + 1.0) / 2.0;
      const cplx t0 = c * pw;
      const cplx t2 = (-2.0 / 3.0) * c_next * pw;
      if (std::abs(t2) > last) break;  // past the smallest term of the asymptotic series
      last = std::abs(t2);
      s0 += t0;
      s2 += t2;
      if (std::abs(t2) < 1e-17 * std::abs(s2) && std::abs(t0) < 1e-17 * std::abs(s0)) break;
      pw *= inv2;
      c = c_next;
    }
    return {e * v * s0, e * v3 * s2};
  }

  const cplx b{0.0, -a};
  const cplx sqrt_pi_b = std::sqrt(kPi) * sqrt_a * kEighth;
  cplx g0;
  if (r < 1.5) {
    g0 = v * e - sqrt_pi_b * (1.0 - special::erf_series(z));
  } else {
    g0 = e * (v - sqrt_pi_b * special::erfcx(z));
  }
  const cplx g2 = (v3 * e - 2.0 * b * g0) / 3.0;
  return {g0, g2};
}

// Gauss-Legendre for the lead/trail integrals of one interval.
void interval_by_quadrature(double separation, double tau0, double dt, cplx& lead, cplx& trail) {
  const auto& rule = special::gauss_legendre20();
  const double half = 0.5 * dt;
  const double mid = tau0 + half;
  cplx lo = 0.0;
  cplx hi = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double tau = mid + half * u;
    const cplx k = kernel_value(tau, separation) * (rule.weights[i] * half);
    const double frac = 0.5 * (1.0 + u);  // (tau - tau0) / dt
    lo += k * (1.0 - frac);
    hi += k * frac;
  }
  lead = lo;
  trail = hi;
}

}  // namespace

LagWeights whole_line_lag_weights(double separation, double dt, std::size_t count) {
  if (!(dt > 0.0)) throw ConfigError("lag weights need dt > 0");
  LagWeights w;
  w.dt = dt;
  w.lead.resize(count);
  w.trail.resize(count);
  if (count == 0) return w;

  const double a = 0.25 * separation * separation;
  if (a == 0.0) {
    // Exact: int_{tau0}^{tau1} tau^{-1/2} (tau1 - tau) dtau = (2/3)(s1 - s0)^2 (2 s1 + s0),
    //        int_{tau0}^{tau1} tau^{-1/2} (tau - tau0) dtau = (2/3)(s1 - s0)^2 (s1 + 2 s0),
    // with s = sqrt(tau) and s1 - s0 = dt / (s1 + s0).
    for (std::size_t j = 0; j < count; ++j) {
      const double s0 = std::sqrt(static_cast<double>(j) * dt);
      const double s1 = std::sqrt(static_cast<double>(j + 1) * dt);
      const double ds = dt / (s1 + s0);
      const double f = (2.0 / 3.0) * ds * ds / dt;
      w.lead[j] = kPrefactor * (f * (2.0 * s1 + s0));
      w.trail[j] = kPrefactor * (f * (s1 + 2.0 * s0));
    }
    return w;
  }

  Antiderivative prev = antiderivative(a, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    const double tau0 = static_cast<double>(j) * dt;
    const double tau1 = static_cast<double>(j + 1) * dt;
    const Antiderivative next = antiderivative(a, std::sqrt(tau1));
    const bool smooth = j > 0 && a * (1.0 / tau0 - 1.0 / tau1) <= 1.0;
    if (smooth) {
      interval_by_quadrature(separation, tau0, dt, w.lead[j], w.trail[j]);
    } else {
      const cplx d0 = next.g0 - prev.g0;
      const cplx d2 = next.g2 - prev.g2;
      const cplx i0 = kPrefactor * 2.0 * d0;                        // int U
      const cplx i1 = kPrefactor * (2.0 * d2 - 2.0 * tau0 * d0) / dt;  // int U (tau - tau0)/dt
      w.lead[j] = i0 - i1;
      w.trail[j] = i1;
    }
    prev = next;
  }
  return w;
}

cplx sqrt_moment(double separation, double t) {
  if (!(t > 0.0)) return 0.0;
  const double a = 0.25 * separation * separation;
  if (a == 0.0) return kPrefactor * (0.5 * kPi * t);
  // Laplace inversion of pi/2 p^{-2} exp(-kappa sqrt(p)), kappa = 2 sqrt(-i a):
  //   t [(1 + 2 z^2) erfc z - (2 z / sqrt(pi)) e^{-z^2}],  z = kappa / (2 sqrt t).
  const cplx z = std::sqrt(a / t) * kEighth;
  const cplx e = std::polar(1.0, a / t);  // e^{-z^2}
  const double r = std::abs(z);
  const double rsqpi = 1.0 / std::sqrt(kPi);
  cplx bracket;
  if (r >= 8.0) {
    // erfcx(z) ~ (z sqrt(pi))^{-1} sum_n c_n z^{-2n}, c_n = (-1)^n (2n-1)!! / 2^n, and
    // the bracket collapses to e (z sqrt(pi))^{-1} sum_{n>=1} -2n c_n z^{-2n}.
    const cplx u = 1.0 / (z * z);
    cplx pw = u;
    double c = -0.5;
    cplx s = 0.0;
    double last = INFINITY;
    for (int n = 1; n < 60; ++n) {
      const cplx term = (-2.0 * n * c) * pw;
      if (std::abs(term) > last) break;
      last = std::abs(term);
      s += term;
      if (std::abs(term) < 1e-17 * std::abs(s)) break;
      pw *= u;
      c *= -(2.0 * n + 1.0) / 2.0;
    }
    bracket = e * rsqpi / z * s;
  } else {
    const cplx erfc_z = r < 1.5 ? 1.0 - special::erf_series(z) : e * special::erfcx(z);
    bracket = (1.0 + 2.0 * z * z) * erfc_z - 2.0 * rsqpi * z * e;
  }
  return kPrefactor * (0.5 * kPi * t) * bracket;
}

std::vector<cplx> sqrt_start_weights(const LagWeights& lags, double separation) {
  const std::size_t count = lags.size();
  const double dt = lags.dt;
  std::vector<double> root(count + 1);
  for (std::size_t m = 0; m <= count; ++m) root[m] = std::sqrt(static_cast<double>(m));
  std::vector<cplx> start(count);
  const double sdt = std::sqrt(dt);
  for (std::size_t n = 1; n <= count; ++n) {
    cplx rule = 0.0;
    for (std::size_t j = 0; j < n; ++j) rule += lags.lead[j] * root[n - j] + lags.trail[j] * root[n - j - 1];
    start[n - 1] = (sqrt_moment(separation, static_cast<double>(n) * dt) - rule * sdt) / sdt;
  }
  return start;
}

LagWeights periodic_lag_weights(double separation, double dt, std::size_t count, double period,
                                std::size_t images) {
  if (!(period > 0.0)) throw ConfigError("period must be positive");
  // Centre the image sum on the minimal image.
  double base = std::remainder(separation, period);
  LagWeights total = whole_line_lag_weights(base, dt, count);
  total.start = sqrt_start_weights(total, base);
  for (std::size_t n = 1; n <= images; ++n) {
    for (double sign : {1.0, -1.0}) {
      const LagWeights img = whole_line_lag_weights(base + sign * static_cast<double>(n) * period, dt, count);
      for (std::size_t j = 0; j < count; ++j) {
        total.lead[j] += img.lead[j];
        total.trail[j] += img.trail[j];
      }
    }
  }
  return total;
}

std::vector<cplx> weights_row(const LagWeights& lags, std::size_t n) {
  if (n == 0) throw ConfigError("weights row needs n >= 1 (empty integral)");
  if (n > lags.size()) throw ConfigError("weights row index exceeds the lag table");
  std::vector<cplx> row(n + 1, cplx{});
  for (std::size_t m = 0; m <= n; ++m) {
    const std::size_t lag = n - m;
    if (m >= 1) row[m] += lags.lead[lag];
    if (m + 1 <= n) row[m] += lags.trail[lag - 1];
  }
  return row;
}

std::vector<cplx> abel_weights(std::size_t n, double dt, double separation) {
  if (n == 0) throw ConfigError("abel_weights needs n >= 1 (empty integral)");
  return weights_row(whole_line_lag_weights(separation, dt, n), n);
}

std::vector<cplx> history_weights(const LagWeights& lags) {
  std::vector<cplx> c(lags.size() + 1, cplx{});
  for (std::size_t l = 0; l <= lags.size(); ++l) {
    if (l < lags.size()) c[l] += lags.lead[l];
    if (l >= 1) c[l] += lags.trail[l - 1];
  }
  return c;
}

}  // namespace concnls
