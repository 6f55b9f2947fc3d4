#include <cmath>
#include <numbers>
#include <random>

#include "concnls/diagnostics.hpp"
#include "concnls/propagator.hpp"
#include "doctest.h"
#include "oracle_values.hpp"

using namespace concnls;

namespace {

const double kPi = std::numbers::pi;

cplx gaussian_solution(double t, double x) {
  const cplx d{1.0, 4.0 * t};
  return std::exp(-x * x / d) / std::sqrt(d);
}

ComplexField gaussian(const Grid1D& g) {
  ComplexField f(g);
  for (std::size_t m = 0; m < g.size(); ++m) f.values[m] = std::exp(-g.x(m) * g.x(m));
  return f;
}

// Smooth, aperiodic-looking but band-limited test field.
ComplexField random_smooth(const Grid1D& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n;
  ComplexField f(g);
  for (int j = -20; j <= 20; ++j) {
    const cplx c{n(rng) / (1.0 + j * j), n(rng) / (1.0 + j * j)};
    const double k = kPi * j / g.half_width();
    for (std::size_t m = 0; m < g.size(); ++m) f.values[m] += c * std::polar(1.0, k * g.x(m));
  }
  return f;
}

double max_diff(const ComplexField& a, const ComplexField& b) {
  double d = 0.0;
  for (std::size_t m = 0; m < a.values.size(); ++m) d = std::max(d, std::abs(a.values[m] - b.values[m]));
  return d;
}

}  // namespace

TEST_CASE("kernel value") {
  // e^{-i pi/4} / (2 sqrt(pi)) = 0.199471 (1 - i)
  const cplx u = kernel_value(1.0, 0.0);
  CHECK(u.real() == doctest::Approx(0.19947114020071635).epsilon(1e-15));
  CHECK(u.imag() == doctest::Approx(-0.19947114020071635).epsilon(1e-15));
  for (double x : {-3.0, 0.0, 0.7, 12.0}) CHECK(std::abs(kernel_value(1.0, x)) == doctest::Approx(0.2820948).epsilon(1e-7));

  const cplx half = kernel_value(0.5, 1.0);
  const cplx expect = std::polar(1.0 / std::sqrt(2.0 * kPi), -kPi / 4.0) * std::polar(1.0, 0.5);
  CHECK(std::abs(half - expect) < 1e-15);

  for (const auto& o : oracle::kKernel) {
    CAPTURE(o.t);
    CAPTURE(o.x);
    CHECK(std::abs(kernel_value(o.t, o.x) - o.value) < 1e-14 * std::abs(o.value));
  }
  CHECK_THROWS_AS(kernel_value(0.0, 1.0), ConfigError);
}

TEST_CASE("kernel modulus does not depend on x") {
  for (double t : {1e-3, 0.1, 2.0, -0.5}) {
    const double expect = 1.0 / std::sqrt(4.0 * kPi * std::abs(t));
    for (double x : {0.0, 0.3, -5.0}) CHECK(std::abs(kernel_value(t, x)) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("free evolution basics") {
  const Grid1D g(8.0, 64);
  const ComplexField f = gaussian(g);
  CHECK(max_diff(free_evolve(f, 0.0), f) == 0.0);
  CHECK(free_evolve(f, 0.3).time == doctest::Approx(0.3));

  const Grid1D p(kPi, 32);
  ComplexField wave(p);
  for (std::size_t m = 0; m < 32; ++m) wave.values[m] = std::polar(1.0, 3.0 * p.x(m));
  const ComplexField out = free_evolve(wave, 0.3);
  for (std::size_t m = 0; m < 32; ++m) CHECK(std::abs(out.values[m] - std::polar(1.0, -9.0 * 0.3) * wave.values[m]) < 1e-13);
}

TEST_CASE("gaussian oracle") {
  const Grid1D g(16.0, 1024);
  const ComplexField out = free_evolve(gaussian(g), 0.25);
  double err = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) err = std::max(err, std::abs(out.values[m] - gaussian_solution(0.25, g.x(m))));
  CHECK(err < 1e-10);
}

TEST_CASE("unitarity, H1 conservation and group law") {
  const Grid1D g(10.0, 1024);
  for (unsigned seed : {1u, 2u, 3u}) {
    const ComplexField f = random_smooth(g, seed);
    const double n0 = f.l2_norm();
    const double h0 = h1_norm(f);
    for (double t : {1e-3, 0.37, 5.0, -1.2}) {
      const ComplexField e = free_evolve(f, t);
      CHECK(std::abs(e.l2_norm() - n0) <= 1e-12 * n0);
      CHECK(std::abs(h1_norm(e) - h0) <= 1e-12 * h0);
    }
    const ComplexField a = free_evolve(free_evolve(f, 0.4), 0.9);
    const ComplexField b = free_evolve(f, 1.3);
    double scale = 0.0;
    for (const cplx& z : b.values) scale = std::max(scale, std::abs(z));
    CHECK(max_diff(a, b) <= 1e-12 * scale);
    CHECK(max_diff(free_evolve(free_evolve(f, 0.7), -0.7), f) <= 1e-12 * scale);
  }
}

TEST_CASE("kernel convolution agrees with the spectral propagator") {
  const Grid1D g(16.0, 512);
  const ComplexField f = gaussian(g);
  const double t = 0.5;
  const ComplexField spectral = free_evolve(f, t);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.x(i)) > 4.0) continue;
    cplx s = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) s += kernel_value(t, g.x(i) - g.x(m)) * f.values[m];
    err = std::max(err, std::abs(g.spacing() * s - spectral.values[i]));
  }
  CHECK(err < 1e-6);
}

TEST_CASE("free traces") {
  const Grid1D g(16.0, 1024);
  const ComplexField f = gaussian(g);
  const double times[] = {0.0, 0.1, 0.25, 0.5};
  const auto tr = free_trace(f, times, 0.0);
  CHECK(std::abs(tr[0] - f.values[512]) < 1e-15);
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(tr[i] - gaussian_solution(times[i], 0.0)) < 1e-10);

  const auto off = free_trace(f, times, 1.0);
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(off[i] - gaussian_solution(times[i], 1.0)) < 1e-10);

  const auto zero = free_trace(ComplexField(g), times, 0.0);
  for (const cplx& z : zero) CHECK(z == cplx{});
  CHECK_THROWS_AS(free_trace(f, times, 0.01), ConfigError);
}

TEST_CASE("spectral derivative and kinetic energy") {
  const Grid1D g(16.0, 1024);
  const ComplexField f = gaussian(g);
  SpectralWorkspace ws(g);
  CHECK(kinetic_energy(ws, f.values) == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-12));

  const ComplexField d = spectral_derivative(f);
  double err = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) err = std::max(err, std::abs(d.values[m] + 2.0 * g.x(m) * f.values[m]));
  CHECK(err < 1e-12);
}
