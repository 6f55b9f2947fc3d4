#pragma once

// The limit problem with point-concentrated nonlinearity,
//
//   psi(t) = U(t) psi0 - i sum_k alpha_k int_0^t U(t - s, . - y_k) q_k(s) ds,
//   q_k = |psi(., y_k)|^{2 mu_k} psi(., y_k),
//
// on the torus [-L, L). Evaluating at x = y_j gives N coupled Volterra
// equations for the traces; they are marched in time with product-trapezoid
// weights and a damped fixed point per step. The field is rebuilt afterwards
// from the charges.

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "concnls/abel.hpp"
#include "concnls/core.hpp"

namespace concnls {

/// Periodic lag weights for every node offset that is requested, computed
/// once for `count` lags and shared by all rows n <= count.
class LagWeightCache {
 public:
  LagWeightCache(const Grid1D& grid, double dt, std::size_t count, std::size_t images);

  /// Weights for separation x_a - x_b between two grid nodes. Computes and
  /// stores them on a miss; lookups of prefetched pairs are safe to run
  /// concurrently.
  const LagWeights& between(std::size_t node_a, std::size_t node_b);

  /// Compute all missing pairs, in parallel.
  void prefetch(std::span<const std::pair<std::size_t, std::size_t>> pairs);

  std::size_t count() const { return count_; }

 private:
  std::size_t offset_key(std::size_t a, std::size_t b) const;
  LagWeights compute(std::size_t key) const;

  Grid1D grid_;
  double dt_;
  std::size_t count_;
  std::size_t images_;
  std::map<std::size_t, LagWeights> by_offset_;
};

/// March the trace equations n = 1..N. Throws SolverError when the fixed
/// point fails at some step.
ChargeTrajectory solve_charges(const PointProblem& problem);

/// Field values at the given nodes and step, by direct time quadrature of the
/// Duhamel term with the periodic kernel. At x = y_k the result coincides
/// with the solved trace.
std::vector<cplx> reconstruct_nodes(const PointProblem& problem, const ChargeTrajectory& charges, std::size_t step,
                                    std::span<const std::size_t> nodes);

/// Full nodal reconstruction at time t (must be a step time). O(M n) kernel
/// work; meant for small grids and checks.
ComplexField reconstruct_field(const PointProblem& problem, const ChargeTrajectory& charges, double t);

/// Snapshots at the given steps, rebuilt per Fourier mode: for each mode the
/// Duhamel integral against the piecewise-linear charges is accumulated
/// exactly by a one-step recursion. Gives the projection of the solution onto
/// the grid's Fourier modes, at O(M) per step.
std::vector<ComplexField> reconstruct_spectral(const PointProblem& problem, const ChargeTrajectory& charges,
                                               std::span<const std::size_t> steps);

/// E = ||psi'||^2 + sum_k alpha_k (mu_k + 1)^{-1} |psi(y_k)|^{2 mu_k + 2}.
double energy_point(const ComplexField& field, std::span<const cplx> traces, std::span<const PointDefect> defects);

/// Kinetic energy in the modes |j| >= M/2 that the grid drops, for t >= dt.
/// At high wavenumber each defect contributes -i alpha (q(t) - e^{-i k^2 t} q(0)) / (i k^2)
/// to the Duhamel coefficient, so the tail is
///   (L / pi^2) sum_{j >= M/2} j^{-2} sum_k alpha_k^2 (|q_k(t)|^2 + |q_k(0)|^2)
/// up to terms that oscillate in k or decay faster.
double kinetic_tail(const Grid1D& grid, std::span<const PointDefect> defects, std::span<const cplx> charges_now,
                    std::span<const cplx> charges_start);

/// |[psi'](y) - alpha |psi(y)|^{2 mu} psi(y)| / max(1, |psi(y)|) from the nine
/// nodal values psi(y + j h), j = -4..4, using 4th-order one-sided differences.
double jump_residual(std::span<const cplx> stencil, double h, double alpha, double mu);
/// Same, reading the stencil around `site` from a field.
double jump_residual(const ComplexField& field, double site, double alpha, double mu);

struct PointTrajectory {
  ChargeTrajectory charges;
  std::vector<std::size_t> output_steps;
  std::vector<ComplexField> snapshots;
  double initial_mass = 0.0;
  double initial_energy = 0.0;
  std::vector<double> mass;                        // per snapshot
  std::vector<double> energy;                      // per snapshot
  std::vector<std::vector<double>> jump_residuals;  // [snapshot][defect]
};

/// solve_charges, then spectral snapshots, mass, energy and jump residuals at
/// the output steps. The energy includes kinetic_tail. Jump residuals use the
/// nodal reconstruction.
PointTrajectory run_point(const PointProblem& problem, std::span<const std::size_t> output_steps,
                          bool with_jump_residuals = true);

}  // namespace concnls
