#pragma once

// Norms, error ladders and log-log rate fits.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "concnls/core.hpp"
#include "concnls/point_solver.hpp"
#include "concnls/scaled_solver.hpp"

namespace concnls {

double l2_norm(const ComplexField& field);
/// sqrt(||psi||^2 + ||psi'||^2), spectral derivative.
double h1_norm(const ComplexField& field);
double max_abs(std::span<const cplx> values);

/// Right-hand side of the discrete Gagliardo-Nirenberg inequality on the
/// torus, ||psi||^2 / (2L) + 2 ||psi|| ||psi'||. Bounds max |psi_m|^2 for any
/// grid field read as its trigonometric interpolant (Nyquist term dropped).
double gagliardo_nirenberg_bound(const ComplexField& field);

struct ErrorSample {
  double epsilon = 0.0;
  double pointwise = 0.0;  // max over sites and output times
  double l2 = 0.0;         // max over output times
  double h1 = 0.0;
  std::vector<double> pointwise_per_site;
};

/// Per epsilon, the sup over the common output lattice of the three errors.
/// Throws ConfigError unless every run shares grid, dt, step count, sites and
/// output steps with the point run.
std::vector<ErrorSample> error_ladder(std::span<const ScaledTrajectory> scaled, const PointTrajectory& point);

enum class ErrorNorm { pointwise, l2, h1 };
const char* norm_name(ErrorNorm norm);

struct RateFit {
  double delta = 0.0;      // slope of log err against log eps
  double prefactor = 0.0;  // c in err ~ c eps^delta
  double residual = 0.0;   // RMS of the log residuals
  double eps_min = 0.0;
  double eps_max = 0.0;
  std::size_t samples = 0;
  bool degenerate = false;  // some error was <= floor; nothing fitted
  std::string note;
};

/// Least squares on (log x, log y). Needs at least three points; any y <= 0
/// gives a degenerate fit instead of a number; so does any y <= floor, for
/// errors that are round-off rather than discretisation.
RateFit fit_power_law(std::span<const double> x, std::span<const double> y, double floor = 0.0);
RateFit fit_rate(std::span<const ErrorSample> samples, ErrorNorm which, double floor = 0.0);

/// log(e_coarse / e_fine) / log(ratio).
double observed_order(double e_coarse, double e_fine, double ratio = 2.0);

}  // namespace concnls
