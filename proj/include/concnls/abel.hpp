#pragma once

// Product-trapezoid quadrature of Duhamel integrals against the free kernel,
//
//   int_0^{t_n} U(t_n - s, dy) f(s) ds  ~=  sum_m w_{n,m} f(t_m),
//
// where f is replaced by its piecewise-linear interpolant on t_m = m dt and
// the kernel is integrated exactly. With lag tau = t_n - s, every interval
// [j dt, (j+1) dt] contributes to the two samples at its ends; those two
// numbers depend only on (j, dt, dy), so a whole row of weights is assembled
// from one table of per-lag values.
//
// dy = 0 is the Abel case U(tau, 0) = e^{-i pi/4} (4 pi tau)^{-1/2}, done in
// closed form. For dy != 0 the phase exp(i dy^2 / 4 tau) oscillates without
// bound as tau -> 0; those intervals use antiderivatives expressed through
// erfc of complex argument, and intervals where the phase is slowly varying
// use 20-point Gauss-Legendre.

#include <cstddef>
#include <span>
#include <vector>

#include "concnls/core.hpp"

namespace concnls {

struct LagWeights {
  double dt = 0.0;
  /// lead[j]: weight of the sample at lag j from the interval [j dt, (j+1) dt].
  std::vector<cplx> lead;
  /// trail[j]: weight of the sample at lag j + 1 from the same interval.
  std::vector<cplx> trail;
  /// start[n-1]: weight of f(t_1) - f(t_0) added to row n so that the row is
  /// also exact for f = sqrt(s) against the minimal-image kernel. Empty when
  /// no starting correction is attached.
  std::vector<cplx> start;

  std::size_t size() const { return lead.size(); }
};

/// Per-lag weights of the whole-line kernel U(tau, separation), lags 0..count-1.
LagWeights whole_line_lag_weights(double separation, double dt, std::size_t count);

/// int_0^t U(tau, separation) sqrt(t - tau) dtau in closed form.
cplx sqrt_moment(double separation, double t);

/// Starting weights for whole-line lag weights at this separation, rows
/// 1..lags.size(). Corrects the product-trapezoid rule for the sqrt(t) term
/// that solutions of the trace equations carry at t = 0.
std::vector<cplx> sqrt_start_weights(const LagWeights& lags, double separation);

/// Same for the periodic kernel sum_{|n| <= images} U(tau, separation + n period),
/// with starting weights of the minimal image attached.
LagWeights periodic_lag_weights(double separation, double dt, std::size_t count, double period, std::size_t images);

/// Row w_{n,0..n} assembled from lag weights (needs n <= lags.size()).
std::vector<cplx> weights_row(const LagWeights& lags, std::size_t n);

/// Whole-line product-trapezoid row w_{n,m}, m = 0..n. Throws for n == 0.
std::vector<cplx> abel_weights(std::size_t n, double dt, double separation);

/// History weights C_l = lead_l + trail_{l-1} (l >= 1), C_0 = lead_0: the
/// weight of the sample at lag l for every interior sample of a row.
std::vector<cplx> history_weights(const LagWeights& lags);

}  // namespace concnls
