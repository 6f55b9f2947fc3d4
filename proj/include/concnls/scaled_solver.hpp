#pragma once

// Strang splitting for
//
//   i psi_t = -psi_xx + W(x) |psi|^{2 mu(x)} psi,   W = sum_k eps^{-1} V_k((x - y_k)/eps),
//
// on the periodic grid. The nonlinear substep keeps |psi| fixed pointwise and
// is therefore solved exactly as a phase rotation.

#include <cstddef>
#include <span>
#include <vector>

#include "concnls/core.hpp"
#include "concnls/propagator.hpp"

namespace concnls {

/// W sampled on the grid, stored sparsely over the defect supports.
struct ScaledPotential {
  Grid1D grid{1.0, 2};
  std::vector<std::size_t> nodes;  // ascending
  std::vector<double> weight;      // W(x_m)
  std::vector<double> power;       // mu at x_m

  /// W on every node.
  std::vector<double> dense() const;
};

/// Throws ConfigError if h > eps/8 or if supports of defects with different
/// powers overlap.
ScaledPotential scaled_potential_on_grid(std::span<const DefectSpec> defects, double epsilon, const Grid1D& grid);

/// psi <- psi exp(-i W |psi|^{2 mu} tau), in place.
void nonlinear_phase_step(std::span<cplx> values, const ScaledPotential& w, double tau);
ComplexField nonlinear_phase_step(const ComplexField& field, const ScaledPotential& w, double tau);

/// U(dt/2) N(dt) U(dt/2); time tag advanced by dt.
ComplexField strang_step(const ComplexField& field, const ScaledPotential& w, double dt);

/// Reusable stepper: one FFT pair per half step, multipliers precomputed.
class StrangStepper {
 public:
  StrangStepper(ScaledPotential w, double dt);

  /// Advance `values` by one step in place.
  void step(std::span<cplx> values);
  /// ||psi'||^2 of the state left by the last step, read off its spectrum.
  double last_kinetic() const { return last_kinetic_; }

  const ScaledPotential& potential() const { return w_; }
  SpectralWorkspace& workspace() { return ws_; }

 private:
  ScaledPotential w_;
  SpectralWorkspace ws_;
  std::vector<cplx> half_;
  double dt_;
  double last_kinetic_ = 0.0;
};

/// Potential part sum_k (mu_k+1)^{-1} h sum W |psi|^{2 mu_k + 2}.
double potential_energy(std::span<const cplx> values, const ScaledPotential& w);

/// E^eps: spectral kinetic energy plus the potential part.
double energy_scaled(const ComplexField& field, const ScaledPotential& w);
double energy_scaled(const ComplexField& field, std::span<const DefectSpec> defects, double epsilon);

/// Raised when the H1 norm exceeds the guard.
class BlowUpError : public SolverError {
 public:
  BlowUpError(double time, double h1_norm, double threshold);
  double time() const { return time_; }
  double h1_norm() const { return h1_; }

 private:
  double time_;
  double h1_;
};

struct ScaledTrajectory {
  double epsilon = 0.0;
  double dt = 0.0;
  std::vector<double> mass;    // ||psi||^2 per step, n = 0..N
  std::vector<double> energy;  // E^eps per step
  std::vector<double> h1;      // ||psi||_{H1} per step
  std::vector<std::vector<cplx>> traces;  // [defect][n]
  std::vector<std::size_t> output_steps;
  std::vector<ComplexField> snapshots;    // one per output step

  std::size_t steps() const { return mass.empty() ? 0 : mass.size() - 1; }
  double time(std::size_t n) const { return static_cast<double>(n) * dt; }
};

/// Runs the scaled problem, snapshotting at the given step indices (ascending,
/// each in 1..N). Throws BlowUpError when the guard trips.
ScaledTrajectory run_scaled(const ScaledProblem& problem, std::span<const std::size_t> output_steps);

}  // namespace concnls
