#include "concnls/scaled_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "concnls/simd/kernels.hpp"

namespace concnls {

std::vector<double> ScaledPotential::dense() const {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) out[nodes[i]] = weight[i];
  return out;
}

ScaledPotential scaled_potential_on_grid(std::span<const DefectSpec> defects, double epsilon, const Grid1D& grid) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (grid.spacing() > epsilon / 8.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "resolution rule h <= epsilon/8 violated: h = " << grid.spacing() << ", epsilon = " << epsilon;
    throw ConfigError(os.str());
  }

  const std::size_t M = grid.size();
  std::vector<double> w(M, 0.0);
  std::vector<double> mu(M, -1.0);  // -1: no defect owns the node
  for (const DefectSpec& d : defects) {
    const double sup = d.profile.sup_norm();
    if (sup == 0.0) continue;
    const double radius = d.profile.support_radius() * epsilon;
    for (std::size_t m = 0; m < M; ++m) {
      const double dist = std::remainder(grid.x(m) - d.site, grid.period());
      if (std::abs(dist) > radius) continue;
      const double v = d.profile(dist / epsilon);
      if (std::abs(v) <= 1e-15 * sup) continue;
      if (mu[m] >= 0.0 && mu[m] != d.power) {
        std::ostringstream os;
        os << "defect supports overlap at x = " << grid.x(m) << " with different powers (" << mu[m] << " vs "
           << d.power << ")";
        throw ConfigError(os.str());
      }
      mu[m] = d.power;
      w[m] += v / epsilon;
    }
  }

  ScaledPotential out;
  out.grid = grid;
  for (std::size_t m = 0; m < M; ++m) {
    if (mu[m] < 0.0) continue;
    out.nodes.push_back(m);
    out.weight.push_back(w[m]);
    out.power.push_back(mu[m]);
  }
  return out;
}

void nonlinear_phase_step(std::span<cplx> values, const ScaledPotential& w, double tau) {
  if (values.size() != w.grid.size()) throw ConfigError("field and potential live on different grids");
  for (std::size_t i = 0; i < w.nodes.size(); ++i) {
    cplx& z = values[w.nodes[i]];
    const double a2 = std::norm(z);
    double rate = w.weight[i];
    if (w.power[i] != 0.0) rate *= (a2 == 0.0) ? 0.0 : std::pow(a2, w.power[i]);
    z *= std::polar(1.0, -rate * tau);
  }
}

ComplexField nonlinear_phase_step(const ComplexField& field, const ScaledPotential& w, double tau) {
  ComplexField out = field;
  nonlinear_phase_step(out.values, w, tau);
  out.time = field.time + tau;
  return out;
}

StrangStepper::StrangStepper(ScaledPotential w, double dt)
    : w_(std::move(w)), ws_(w_.grid), half_(ws_.evolution_multiplier(0.5 * dt)), dt_(dt) {}

void StrangStepper::step(std::span<cplx> values) {
  const auto& k = simd::kernels();
  auto buf = ws_.buffer();
  std::copy(values.begin(), values.end(), buf.begin());
  ws_.forward();
  k.cmul(buf, half_);
  ws_.backward();
  nonlinear_phase_step(buf, w_, dt_);
  ws_.forward();
  k.cmul(buf, half_);
  last_kinetic_ = kinetic_energy_from_spectrum(ws_, buf);
  ws_.backward();
  std::copy(buf.begin(), buf.end(), values.begin());
}

ComplexField strang_step(const ComplexField& field, const ScaledPotential& w, double dt) {
  ComplexField out = field;
  StrangStepper stepper(w, dt);
  stepper.step(out.values);
  out.time = field.time + dt;
  return out;
}

double potential_energy(std::span<const cplx> values, const ScaledPotential& w) {
  double e = 0.0;
  for (std::size_t i = 0; i < w.nodes.size(); ++i) {
    const double a2 = std::norm(values[w.nodes[i]]);
    const double mu = w.power[i];
    const double density = (mu == 0.0) ? a2 : (a2 == 0.0 ? 0.0 : std::pow(a2, mu + 1.0));
    e += w.weight[i] * density / (mu + 1.0);
  }
  return w.grid.spacing() * e;
}

double energy_scaled(const ComplexField& field, const ScaledPotential& w) {
  SpectralWorkspace ws(field.grid);
  return kinetic_energy(ws, field.values) + potential_energy(field.values, w);
}

double energy_scaled(const ComplexField& field, std::span<const DefectSpec> defects, double epsilon) {
  return energy_scaled(field, scaled_potential_on_grid(defects, epsilon, field.grid));
}

namespace {

std::string blowup_message(double time, double h1, double threshold) {
  std::ostringstream os;
  os << "blow-up guard tripped at t = " << time << ": H1 norm " << h1 << " exceeds " << threshold;
  return os.str();
}

}  // namespace

BlowUpError::BlowUpError(double time, double h1_norm, double threshold)
    : SolverError(blowup_message(time, h1_norm, threshold)), time_(time), h1_(h1_norm) {}

ScaledTrajectory run_scaled(const ScaledProblem& problem, std::span<const std::size_t> output_steps) {
  validate(problem);
  const std::size_t N = problem.steps();
  for (std::size_t i = 0; i < output_steps.size(); ++i) {
    if (output_steps[i] < 1 || output_steps[i] > N || (i > 0 && output_steps[i] <= output_steps[i - 1])) {
      throw ConfigError("output steps must be strictly ascending within 1..N");
    }
  }

  const Grid1D& grid = problem.grid;
  const double h = grid.spacing();
  StrangStepper stepper(scaled_potential_on_grid(problem.defects, problem.epsilon, grid), problem.dt);
  const ScaledPotential& w = stepper.potential();
  const auto& k = simd::kernels();

  std::vector<std::size_t> sites;
  for (const DefectSpec& d : problem.defects) sites.push_back(grid.index_of(d.site));

  ScaledTrajectory traj;
  traj.epsilon = problem.epsilon;
  traj.dt = problem.dt;
  traj.mass.reserve(N + 1);
  traj.energy.reserve(N + 1);
  traj.h1.reserve(N + 1);
  traj.traces.assign(sites.size(), {});
  for (auto& tr : traj.traces) tr.reserve(N + 1);
  traj.output_steps.assign(output_steps.begin(), output_steps.end());

  std::vector<cplx> psi = problem.psi0;
  auto record = [&](double kinetic) {
    const double mass = h * k.sum_abs2(psi);
    traj.mass.push_back(mass);
    traj.energy.push_back(kinetic + potential_energy(psi, w));
    traj.h1.push_back(std::sqrt(mass + kinetic));
    for (std::size_t j = 0; j < sites.size(); ++j) traj.traces[j].push_back(psi[sites[j]]);
  };

  record(kinetic_energy(stepper.workspace(), psi));
  const double threshold = problem.blowup_factor * traj.h1.front();

  std::size_t next_out = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    stepper.step(psi);
    record(stepper.last_kinetic());
    const double h1 = traj.h1.back();
    if (!std::isfinite(h1) || h1 > threshold) throw BlowUpError(traj.time(n), h1, threshold);
    if (next_out < output_steps.size() && output_steps[next_out] == n) {
      traj.snapshots.emplace_back(grid, psi, traj.time(n));
      ++next_out;
    }
  }
  return traj;
}

}  // namespace concnls
