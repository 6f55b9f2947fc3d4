#pragma once

// End-to-end experiments: epsilon ladders against the limit problem,
// self-convergence in dt, and domain-size validation.

#include <filesystem>
#include <string>
#include <vector>

#include "concnls/config.hpp"
#include "concnls/diagnostics.hpp"

namespace concnls {

struct ExperimentPlan {
  Config config;  // ladder in config.epsilons
  std::filesystem::path output_dir;  // empty: write nothing
  bool parallel = true;
};

/// Throws ConfigError unless the ladder is strictly decreasing and every
/// epsilon satisfies the resolution rule.
void validate_plan(const ExperimentPlan& plan);

struct ScaledRunSummary {
  double epsilon = 0.0;
  double max_h1 = 0.0;
  double mass_drift = 0.0;    // max relative
  double energy_drift = 0.0;  // max relative
};

struct ExperimentResult {
  std::vector<ErrorSample> samples;  // ladder order
  std::vector<ErrorNorm> norms;
  std::vector<RateFit> fits;         // one per norm
  std::vector<ScaledRunSummary> runs;
  double point_mass_drift = 0.0;
  double point_energy_drift = 0.0;
  double max_jump_residual = 0.0;
  std::string report;
};

/// One point run and one scaled run per epsilon (in parallel unless
/// plan.parallel is false). Writes ladder.csv, fits.csv, report.txt,
/// config.json, point.csv and scaled_eps<eps>.csv into the output directory.
/// Failures name the epsilon that failed.
ExperimentResult run_convergence_experiment(const ExperimentPlan& plan);

/// Same computation as run_convergence_experiment on an output lattice with
/// `count` instants and no files written.
std::vector<ErrorSample> ladder_on_lattice(const ExperimentPlan& plan, std::size_t count);

struct SelfConvergenceResult {
  std::vector<double> dts;             // dt, dt/2, dt/4, dt/8
  std::vector<double> scaled_errors;   // successive differences, final-time L2
  std::vector<double> scaled_orders;
  std::vector<double> point_errors;    // successive differences, sup of traces
  std::vector<double> point_orders;
  bool scaled_ok = true;  // all orders >= 1.8 (or errors saturated at roundoff)
  bool point_ok = true;   // all orders >= 1.3
  std::string report;
};

/// Halves dt three times for the smallest-epsilon scaled problem and the
/// limit problem and reports observed orders.
SelfConvergenceResult run_self_convergence(const ExperimentPlan& plan);

struct DomainResult {
  ErrorSample base;
  ErrorSample doubled;
  double max_relative_change = 0.0;
  bool ok = true;  // change < 1%
  std::string report;
};

/// Repeats the smallest-epsilon comparison on [-2L, 2L) with the same h.
DomainResult validate_domain(const ExperimentPlan& plan);

}  // namespace concnls
