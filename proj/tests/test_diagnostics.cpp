#include <cmath>
#include <numbers>
#include <random>

#include "concnls/diagnostics.hpp"
#include "concnls/point_solver.hpp"
#include "concnls/scaled_solver.hpp"
#include "doctest.h"

using namespace concnls;

namespace {

const double kPi = std::numbers::pi;

// A point trajectory built by hand, and a scaled one that copies it.
struct Pair {
  PointTrajectory point;
  ScaledTrajectory scaled;
};

Pair matching_pair() {
  const Grid1D g(4.0, 64);
  Pair p;
  p.point.charges.dt = 0.1;
  p.point.charges.powers = {1.0};
  p.point.charges.traces = {std::vector<cplx>(5, cplx{1.0, 0.0})};
  p.point.charges.charges = p.point.charges.traces;
  p.point.output_steps = {2, 4};
  for (double t : {0.2, 0.4}) {
    ComplexField f(g, t);
    for (std::size_t m = 0; m < g.size(); ++m) f.values[m] = std::exp(-g.x(m) * g.x(m));
    p.point.snapshots.push_back(f);
  }
  p.scaled.epsilon = 0.1;
  p.scaled.dt = 0.1;
  p.scaled.mass.assign(5, 1.0);
  p.scaled.traces = p.point.charges.traces;
  p.scaled.output_steps = p.point.output_steps;
  p.scaled.snapshots = p.point.snapshots;
  return p;
}

}  // namespace

TEST_CASE("norms of simple fields") {
  const Grid1D g(kPi, 32);
  ComplexField f(g);
  CHECK(h1_norm(f) == 0.0);
  for (std::size_t m = 0; m < 32; ++m) f.values[m] = 2.0 * std::polar(1.0, 3.0 * g.x(m));
  CHECK(l2_norm(f) == doctest::Approx(2.0 * std::sqrt(2.0 * kPi)).epsilon(1e-14));
  CHECK(h1_norm(f) == doctest::Approx(2.0 * std::sqrt(2.0 * kPi * 10.0)).epsilon(1e-13));
  CHECK(max_abs(f.values) == doctest::Approx(2.0));

  const Grid1D wide(16.0, 1024);
  ComplexField gauss(wide);
  for (std::size_t m = 0; m < wide.size(); ++m) gauss.values[m] = std::exp(-wide.x(m) * wide.x(m));
  const double mass = std::sqrt(kPi / 2.0);
  CHECK(h1_norm(gauss) == doctest::Approx(std::sqrt(mass + mass)).epsilon(1e-13));
  CHECK(l2_norm(gauss) <= h1_norm(gauss));
}

TEST_CASE("Gagliardo-Nirenberg bound holds for random fields") {
  std::mt19937 rng(7);
  std::normal_distribution<double> n;
  for (std::size_t M : {16u, 64u, 256u}) {
    const Grid1D g(3.0, M);
    for (int trial = 0; trial < 20; ++trial) {
      ComplexField f(g);
      for (auto& v : f.values) v = {n(rng), n(rng)};
      CHECK(max_abs(f.values) * max_abs(f.values) <= gagliardo_nirenberg_bound(f) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("power-law fits") {
  const double x[4] = {0.2, 0.1, 0.05, 0.025};
  double y[4];
  for (int i = 0; i < 4; ++i) y[i] = 3.0 * std::pow(x[i], 0.75);
  RateFit f = fit_power_law(x, y);
  CHECK(f.delta == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  CHECK(f.samples == 4);
  CHECK(f.eps_min == 0.025);
  CHECK(f.eps_max == 0.2);
  CHECK_FALSE(f.degenerate);

  const double flat[4] = {1.0, 1.0, 1.0, 1.0};
  CHECK(std::abs(fit_power_law(x, flat).delta) < 1e-12);

  // Mixed rates: the fitted slope lies between them and the residual shows it.
  for (int i = 0; i < 4; ++i) y[i] = x[i] + 0.1 * std::sqrt(x[i]);
  f = fit_power_law(x, y);
  CHECK(f.delta > 0.5);
  CHECK(f.delta < 1.0);
  CHECK(f.residual > 1e-4);

  const double zero[4] = {0.1, 0.0, 0.1, 0.1};
  f = fit_power_law(x, zero);
  CHECK(f.degenerate);
  CHECK_FALSE(f.note.empty());

  CHECK_THROWS_AS(fit_power_law(std::span(x, 2), std::span(y, 2)), ConfigError);
  CHECK_THROWS_AS(fit_power_law(std::span(x, 3), std::span(y, 4)), ConfigError);
}

TEST_CASE("fit_rate picks the requested norm") {
  std::vector<ErrorSample> s;
  for (double e : {0.1, 0.05, 0.025}) s.push_back({e, e, e * e, std::sqrt(e), {e}});
  CHECK(fit_rate(s, ErrorNorm::pointwise).delta == doctest::Approx(1.0));
  CHECK(fit_rate(s, ErrorNorm::l2).delta == doctest::Approx(2.0));
  CHECK(fit_rate(s, ErrorNorm::h1).delta == doctest::Approx(0.5));
  CHECK(std::string(norm_name(ErrorNorm::h1)) == "h1");
}

TEST_CASE("observed order") {
  CHECK(observed_order(4.0, 1.0) == doctest::Approx(2.0));
  CHECK(observed_order(9.0, 1.0, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("error ladder") {
  Pair p = matching_pair();
  const ScaledTrajectory one[1] = {p.scaled};
  auto e = error_ladder(one, p.point);
  REQUIRE(e.size() == 1);
  CHECK(e[0].epsilon == 0.1);
  CHECK(e[0].pointwise == 0.0);
  CHECK(e[0].l2 == 0.0);
  CHECK(e[0].h1 == 0.0);

  // A uniform offset c on one snapshot gives L2 = H1 = |c| sqrt(2L).
  ScaledTrajectory shifted = p.scaled;
  for (auto& v : shifted.snapshots[1].values) v += 0.01;
  shifted.traces[0][2] += 0.5;
  shifted.traces[0][3] += 7.0;  // not an output step
  const ScaledTrajectory two[1] = {shifted};
  e = error_ladder(two, p.point);
  CHECK(e[0].pointwise == doctest::Approx(0.5));
  CHECK(e[0].l2 == doctest::Approx(0.01 * std::sqrt(8.0)).epsilon(1e-12));
  CHECK(e[0].h1 == doctest::Approx(0.01 * std::sqrt(8.0)).epsilon(1e-12));
  CHECK(e[0].l2 <= e[0].h1 + 1e-15);

  ScaledTrajectory bad = p.scaled;
  bad.dt = 0.05;
  CHECK_THROWS_AS(error_ladder(std::span(&bad, 1), p.point), ConfigError);
  bad = p.scaled;
  bad.output_steps = {1, 4};
  CHECK_THROWS_AS(error_ladder(std::span(&bad, 1), p.point), ConfigError);
  bad = p.scaled;
  bad.snapshots[0] = ComplexField(Grid1D(4.0, 128), 0.2);
  CHECK_THROWS_AS(error_ladder(std::span(&bad, 1), p.point), ConfigError);
}
