#include <cmath>
#include <numbers>

#include "concnls/diagnostics.hpp"
#include "concnls/propagator.hpp"
#include "concnls/scaled_solver.hpp"
#include "doctest.h"

using namespace concnls;

namespace {

std::vector<cplx> gaussian(const Grid1D& g, double shift = 0.0) {
  std::vector<cplx> v(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) v[m] = std::exp(-std::pow(g.x(m) - shift, 2)) * std::polar(1.0, 0.5 * g.x(m));
  return v;
}

ScaledProblem problem(double eps, double alpha, double mu, std::size_t M = 512) {
  ScaledProblem p;
  p.grid = Grid1D(8.0, M);
  p.defects = {{0.0, GaussianProfile{alpha / std::sqrt(std::numbers::pi), 1.0}, mu}};
  p.epsilon = eps;
  p.psi0 = gaussian(p.grid, 0.3);
  p.horizon = 0.2;
  p.dt = 1e-3;
  return p;
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<cplx> final_state(ScaledProblem p, double dt) {
  p.dt = dt;
  const std::size_t last[1] = {p.steps()};
  return run_scaled(p, last).snapshots.front().values;
}

}  // namespace

TEST_CASE("box potential samples") {
  const Grid1D g(2.0, 1024);
  const DefectSpec box[1] = {{0.0, BoxProfile{1.0, 0.5}, 1.0}};
  const ScaledPotential w = scaled_potential_on_grid(box, 0.25, g);
  const auto dense = w.dense();
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double x = g.x(m);
    if (std::abs(x) < 0.125 - 1e-12) CHECK(dense[m] == doctest::Approx(4.0));
    if (std::abs(x) > 0.125 + 1e-12) CHECK(dense[m] == 0.0);
  }
  for (std::size_t i = 1; i < w.nodes.size(); ++i) CHECK(w.nodes[i] > w.nodes[i - 1]);
}

TEST_CASE("discrete mass of W tends to alpha") {
  const DefectSpec d[1] = {{0.0, GaussianProfile{0.7, 1.0}, 0.5}};
  const double alpha = 0.7 * std::sqrt(std::numbers::pi);
  for (double eps : {0.5, 0.1, 0.02}) {
    const Grid1D g(8.0, 8192);
    const auto dense = scaled_potential_on_grid(d, eps, g).dense();
    double s = 0.0;
    for (double v : dense) s += v;
    CHECK(g.spacing() * s == doctest::Approx(alpha).epsilon(1e-10));
  }
}

TEST_CASE("resolution rule and overlapping powers") {
  const Grid1D g(8.0, 256);  // h = 1/16
  const DefectSpec d[1] = {{0.0, BoxProfile{}, 1.0}};
  CHECK_NOTHROW(scaled_potential_on_grid(d, 0.5, g));
  CHECK_THROWS_AS(scaled_potential_on_grid(d, 0.25, g), ConfigError);
  const DefectSpec clash[2] = {{0.0, GaussianProfile{}, 1.0}, {0.5, GaussianProfile{}, 0.5}};
  CHECK_THROWS_AS(scaled_potential_on_grid(clash, 0.5, g), ConfigError);
  const DefectSpec same[2] = {{0.0, GaussianProfile{}, 1.0}, {0.5, GaussianProfile{}, 1.0}};
  CHECK_NOTHROW(scaled_potential_on_grid(same, 0.5, g));
}

TEST_CASE("phase step") {
  const Grid1D g(8.0, 256);
  const ComplexField f(g, gaussian(g));
  const DefectSpec d[1] = {{0.0, BoxProfile{2.0, 1.0}, 0.5}};
  const ScaledPotential w = scaled_potential_on_grid(d, 1.0, g);
  CHECK(max_diff(nonlinear_phase_step(f, w, 0.0).values, f.values) == 0.0);

  const ComplexField b = nonlinear_phase_step(f, w, 0.3);
  const auto dense = w.dense();
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(std::abs(b.values[m]) == doctest::Approx(std::abs(f.values[m])).epsilon(1e-15));
    const cplx expect = f.values[m] * std::polar(1.0, -dense[m] * std::abs(f.values[m]) * 0.3);
    CHECK(std::abs(b.values[m] - expect) < 1e-15);
  }

  // Constant state, mu = 1: pure phase exp(-i W tau).
  ComplexField c(g, std::vector<cplx>(g.size(), cplx{1.0, 0.0}));
  const ComplexField r = nonlinear_phase_step(c, w, 0.25);
  for (std::size_t i = 0; i < w.nodes.size(); ++i) {
    CHECK(std::abs(r.values[w.nodes[i]] - std::polar(1.0, -w.weight[i] * 0.25)) < 1e-15);
  }
}

TEST_CASE("Strang step without potential is free evolution") {
  const Grid1D g(8.0, 256);
  const ComplexField f(g, gaussian(g));
  const ScaledPotential w = scaled_potential_on_grid({}, 1.0, g);
  CHECK(max_diff(strang_step(f, w, 0.02).values, free_evolve(f, 0.02).values) < 1e-14);

  StrangStepper stepper(w, 0.02);
  std::vector<cplx> v = f.values;
  stepper.step(v);
  CHECK(max_diff(v, free_evolve(f, 0.02).values) < 1e-14);
}

TEST_CASE("mass conservation") {
  for (double mu : {0.5, 1.0, 2.0}) {
    const ScaledProblem p = problem(0.25, 1.5, mu);
    const std::size_t out[1] = {p.steps()};
    const auto traj = run_scaled(p, out);
    for (double m : traj.mass) CHECK(std::abs(m - traj.mass.front()) < 1e-11 * traj.mass.front());
  }
}

TEST_CASE("second-order convergence in dt") {
  const ScaledProblem p = problem(0.5, 2.0, 1.0, 256);
  const auto ref = final_state(p, 0.01 / 64);
  const auto a = final_state(p, 0.01);
  const auto b = final_state(p, 0.005);
  const auto c = final_state(p, 0.0025);
  const double ea = max_diff(a, ref), eb = max_diff(b, ref), ec = max_diff(c, ref);
  CHECK(observed_order(ea, eb) > 1.9);
  CHECK(observed_order(eb, ec) > 1.9);
}

TEST_CASE("energy") {
  const ScaledProblem p = problem(0.25, 1.5, 1.0);
  const std::size_t out[1] = {p.steps()};
  const auto traj = run_scaled(p, out);
  const double e0 = traj.energy.front();
  const ComplexField f0(p.grid, p.psi0);
  CHECK(e0 == doctest::Approx(energy_scaled(f0, p.defects, p.epsilon)).epsilon(1e-14));
  for (std::size_t n = 0; n < traj.energy.size(); ++n) {
    CHECK(std::abs(traj.energy[n] - e0) < 1e-4 * e0);
    // Defocusing: the potential part is non-negative.
    const double kinetic = traj.h1[n] * traj.h1[n] - traj.mass[n];
    CHECK(kinetic <= traj.energy[n] + 1e-12);
  }

  // Energy drift of a splitting method is O(dt^2).
  ScaledProblem q = p;
  q.dt = 2e-3;
  const auto coarse = run_scaled(q, std::vector<std::size_t>{q.steps()});
  auto drift = [](const ScaledTrajectory& t) {
    double d = 0.0;
    for (double e : t.energy) d = std::max(d, std::abs(e - t.energy.front()));
    return d;
  };
  CHECK(observed_order(drift(coarse), drift(traj)) > 1.5);

  const ScaledPotential none = scaled_potential_on_grid({}, 1.0, p.grid);
  SpectralWorkspace ws(p.grid);
  CHECK(energy_scaled(f0, none) == doctest::Approx(kinetic_energy(ws, p.psi0)).epsilon(1e-15));
}

TEST_CASE("trajectory bookkeeping") {
  const ScaledProblem p = problem(0.5, 1.0, 1.0, 256);
  const std::size_t out[3] = {50, 100, 200};
  const auto traj = run_scaled(p, out);
  CHECK(traj.steps() == 200);
  CHECK(traj.snapshots.size() == 3);
  CHECK(traj.snapshots[1].time == doctest::Approx(0.1));
  CHECK(traj.traces.size() == 1);
  CHECK(traj.traces[0].size() == 201);
  CHECK(traj.traces[0][100] == traj.snapshots[1].values[p.grid.index_of(0.0)]);
  CHECK(traj.h1.front() == doctest::Approx(h1_norm(ComplexField(p.grid, p.psi0))).epsilon(1e-14));
}

TEST_CASE("blow-up guard") {
  ScaledProblem p = problem(0.5, 40.0, 1.0, 256);
  p.blowup_factor = 1.0001;
  const std::size_t out[1] = {p.steps()};
  CHECK_THROWS_AS(run_scaled(p, out), BlowUpError);
  try {
    run_scaled(p, out);
  } catch (const BlowUpError& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.h1_norm() > 0.0);
    CHECK(std::string(e.what()).find("blow-up") != std::string::npos);
  }
}

TEST_CASE("inadmissible focusing problem") {
  ScaledProblem p = problem(0.5, -1.0, 1.5, 256);
  CHECK_THROWS_AS(validate(p), AdmissibilityError);
  p.allow_inadmissible = true;
  CHECK_NOTHROW(validate(p));
  p.defects[0].power = 0.5;
  p.allow_inadmissible = false;
  CHECK_NOTHROW(validate(p));
}
