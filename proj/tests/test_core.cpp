#include <cmath>
#include <numbers>

#include "concnls/core.hpp"
#include "doctest.h"

using namespace concnls;

TEST_CASE("grid geometry") {
  const Grid1D g = make_grid(8.0, 16);
  CHECK(g.spacing() == 1.0);
  CHECK(g.x(0) == -8.0);
  CHECK(g.x(8) == 0.0);
  CHECK(g.index_of(0.0) == 8);
  CHECK(g.spacing() * static_cast<double>(g.size()) == 2.0 * g.half_width());

  const Grid1D two = make_grid(1.0, 2);
  CHECK(two.x(0) == -1.0);
  CHECK(two.x(1) == 0.0);

  for (std::size_t M : {2u, 64u, 4096u}) CHECK(make_grid(16.0, M).index_of(0.0) == M / 2);
}

TEST_CASE("grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(8.0, 7), ConfigError);
  CHECK_THROWS_AS(make_grid(8.0, 1), ConfigError);
  CHECK_THROWS_AS(make_grid(8.0, 0), ConfigError);
  CHECK_THROWS_AS(make_grid(0.0, 16), ConfigError);
  CHECK_THROWS_AS(make_grid(-1.0, 16), ConfigError);
}

TEST_CASE("node lookup") {
  const Grid1D g(4.0, 32);
  CHECK(g.node_index(0.25).value() == 17);
  CHECK_FALSE(g.node_index(0.3).has_value());
  CHECK_THROWS_AS(g.index_of(0.3), ConfigError);
  CHECK(g.node_index(-4.0).value() == 0);
}

TEST_CASE("wavenumbers follow FFT order") {
  const Grid1D g(std::numbers::pi, 8);
  const double expected[8] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (std::size_t j = 0; j < 8; ++j) CHECK(g.wavenumber(j) == doctest::Approx(expected[j]).epsilon(1e-15));
}

TEST_CASE("field norm") {
  const Grid1D g(1.0, 4);
  const ComplexField f(g, {1.0, cplx(0.0, 1.0), -1.0, 0.0});
  CHECK(f.l2_norm() == doctest::Approx(std::sqrt(0.5 * 3.0)));
  CHECK_THROWS_AS(ComplexField(g, std::vector<cplx>(3)), ConfigError);
}

TEST_CASE("potential moments in closed form") {
  const double pi = std::numbers::pi;
  SUBCASE("box") {
    const auto m = potential_moments(BoxProfile{1.0, 0.5});
    CHECK(m.alpha == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.abs_first_moment == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("gaussian") {
    const auto m = potential_moments(GaussianProfile{1.0, 1.0});
    CHECK(m.alpha == doctest::Approx(1.7724539).epsilon(1e-7));
    CHECK(m.alpha == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
    CHECK(m.abs_first_moment == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("zero") {
    const auto m = potential_moments(ZeroProfile{});
    CHECK(m.alpha == 0.0);
    CHECK(m.abs_first_moment == 0.0);
  }
  SUBCASE("double well carries twice the mass of one well") {
    const auto m = potential_moments(DoubleWellProfile{0.5, 0.7, 3.0});
    CHECK(m.alpha == doctest::Approx(2.0 * 0.5 * 0.7 * std::sqrt(pi)).epsilon(1e-14));
  }
  SUBCASE("closed forms agree with fine quadrature") {
    for (const PotentialProfile& p : {PotentialProfile(GaussianProfile{-2.0, 0.3}),
                                      PotentialProfile(DoubleWellProfile{1.0, 0.5, 2.0})}) {
      const auto exact = potential_moments(p);
      const auto quad = quadrature_moments(p, 1e-3, 12.0);
      CHECK(quad.alpha == doctest::Approx(exact.alpha).epsilon(1e-9));
      CHECK(quad.abs_first_moment == doctest::Approx(exact.abs_first_moment).epsilon(1e-6));
    }
  }
}

TEST_CASE("sampled profile moments") {
  SampledProfile s;
  s.origin = -1.0;
  s.spacing = 0.5;
  s.values = {0.0, 1.0, 2.0, 1.0, 0.0};  // hat of height 2 on [-1, 1]
  const auto m = potential_moments(s);
  CHECK(m.alpha == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(potential_moments(SampledProfile{0.0, 0.1, {1.0, NAN}}), ConfigError);
}

TEST_CASE("moment quadrature converges at second order") {
  // |x| V has a kink at 0, so the trapezoid rule is genuinely second order there.
  const PotentialProfile p = GaussianProfile{1.0, 1.0};
  const double exact = potential_moments(p).abs_first_moment;
  double prev = std::abs(quadrature_moments(p, 0.4, 10.0).abs_first_moment - exact);
  for (double h : {0.2, 0.1, 0.05}) {
    const double err = std::abs(quadrature_moments(p, h, 10.0).abs_first_moment - exact);
    CHECK(prev / err >= 3.5);
    prev = err;
  }
}

TEST_CASE("charge map") {
  CHECK(charge({0.0, 0.0}, 0.5) == cplx{});
  CHECK(charge({0.0, 0.0}, 0.1) == cplx{});
  CHECK(charge({2.0, 0.0}, 0.5) == cplx{4.0, 0.0});
  CHECK(charge({0.0, 3.0}, 0.0) == cplx{0.0, 3.0});
  const cplx z{0.6, -0.8};
  CHECK(std::abs(charge(z, 1.0) - z) < 1e-15);
}

TEST_CASE("output lattice") {
  const auto a = output_lattice(2000, 64);
  CHECK(a.size() == 64);
  CHECK(a.front() == 31);
  CHECK(a.back() == 2000);
  const auto b = output_lattice(3, 10);
  CHECK(b == std::vector<std::size_t>{1, 2, 3});
  CHECK_THROWS_AS(output_lattice(0, 4), ConfigError);
  CHECK_THROWS_AS(output_lattice(10, 0), ConfigError);
}

namespace {

ScaledProblem scaled(double mu, PotentialProfile v) {
  ScaledProblem p;
  p.grid = Grid1D(8.0, 512);
  p.defects = {{0.0, std::move(v), mu}};
  p.epsilon = 0.5;
  p.psi0.assign(512, 1.0);
  p.horizon = 0.1;
  p.dt = 0.01;
  return p;
}

}  // namespace

TEST_CASE("scaled problem validation") {
  CHECK_NOTHROW(validate(scaled(0.5, GaussianProfile{1.0, 1.0})));
  CHECK_NOTHROW(validate(scaled(1.5, GaussianProfile{1.0, 1.0})));
  CHECK_NOTHROW(validate(scaled(0.5, GaussianProfile{-1.0, 1.0})));
  CHECK_THROWS_AS(validate(scaled(1.5, GaussianProfile{-1.0, 1.0})), AdmissibilityError);
  CHECK_THROWS_AS(validate(scaled(0.0, GaussianProfile{1.0, 1.0})), AdmissibilityError);

  auto override = scaled(1.5, GaussianProfile{-1.0, 1.0});
  override.allow_inadmissible = true;
  CHECK_NOTHROW(validate(override));

  auto coarse = scaled(0.5, GaussianProfile{1.0, 1.0});
  coarse.epsilon = 0.1;  // h = 1/32 > eps/8
  CHECK_THROWS_AS(validate(coarse), ConfigError);

  auto off_node = scaled(0.5, GaussianProfile{1.0, 1.0});
  off_node.defects[0].site = 0.01;
  CHECK_THROWS_AS(validate(off_node), ConfigError);

  auto twice = scaled(0.5, GaussianProfile{1.0, 1.0});
  twice.defects.push_back(twice.defects[0]);
  CHECK_THROWS_AS(validate(twice), ConfigError);

  auto bad_dt = scaled(0.5, GaussianProfile{1.0, 1.0});
  bad_dt.dt = 0.0;
  CHECK_THROWS_AS(validate(bad_dt), ConfigError);
}

TEST_CASE("point problem validation and coupling") {
  const ScaledProblem s = scaled(0.5, GaussianProfile{1.0, 0.5});
  const PointProblem p = limit_problem(s);
  REQUIRE(p.defects.size() == 1);
  CHECK(p.defects[0].strength == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(p.steps() == 10);

  PointProblem focusing = p;
  focusing.defects[0].strength = -1.0;
  focusing.defects[0].power = 1.5;
  try {
    validate(focusing);
    FAIL("expected an admissibility error");
  } catch (const AdmissibilityError& e) {
    CHECK(std::string(e.what()).find("0 < mu < 1") != std::string::npos);
  }
  focusing.allow_inadmissible = true;
  CHECK_NOTHROW(validate(focusing));
}
