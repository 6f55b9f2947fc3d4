#include "concnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "concnls/propagator.hpp"
#include "concnls/simd/kernels.hpp"

namespace concnls {

double l2_norm(const ComplexField& field) { return field.l2_norm(); }

double h1_norm(const ComplexField& field) {
  SpectralWorkspace ws(field.grid);
  const double mass = field.grid.spacing() * simd::kernels().sum_abs2(field.values);
  return std::sqrt(mass + kinetic_energy(ws, field.values));
}

double max_abs(std::span<const cplx> values) {
  double m = 0.0;
  for (const cplx& z : values) m = std::max(m, std::abs(z));
  return m;
}

double gagliardo_nirenberg_bound(const ComplexField& field) {
  SpectralWorkspace ws(field.grid);
  const double l2 = field.l2_norm();
  const double grad = std::sqrt(kinetic_energy(ws, field.values));
  return l2 * l2 / field.grid.period() + 2.0 * l2 * grad;
}

namespace {

double diff_l2_h1(SpectralWorkspace& ws, const ComplexField& a, const ComplexField& b, double& h1) {
  std::vector<cplx> d(a.values.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.values[i] - b.values[i];
  const double mass = a.grid.spacing() * simd::kernels().sum_abs2(d);
  h1 = std::sqrt(mass + kinetic_energy(ws, d));
  return std::sqrt(mass);
}

}  // namespace

std::vector<ErrorSample> error_ladder(std::span<const ScaledTrajectory> scaled, const PointTrajectory& point) {
  const ChargeTrajectory& q = point.charges;
  const std::size_t K = q.traces.size();
  std::vector<ErrorSample> out;
  for (const ScaledTrajectory& s : scaled) {
    if (s.dt != q.dt || s.steps() != q.steps()) throw ConfigError("error ladder: time lattices differ");
    if (s.output_steps != point.output_steps) throw ConfigError("error ladder: output steps differ");
    if (s.traces.size() != K) throw ConfigError("error ladder: defect counts differ");
    if (s.snapshots.size() != point.snapshots.size()) throw ConfigError("error ladder: snapshot counts differ");
    for (std::size_t i = 0; i < s.snapshots.size(); ++i) {
      if (!(s.snapshots[i].grid == point.snapshots[i].grid)) throw ConfigError("error ladder: grids differ");
    }

    ErrorSample e;
    e.epsilon = s.epsilon;
    e.pointwise_per_site.assign(K, 0.0);
    for (std::size_t n : s.output_steps) {
      for (std::size_t k = 0; k < K; ++k) {
        e.pointwise_per_site[k] = std::max(e.pointwise_per_site[k], std::abs(s.traces[k][n] - q.traces[k][n]));
      }
    }
    for (double v : e.pointwise_per_site) e.pointwise = std::max(e.pointwise, v);
    if (!s.snapshots.empty()) {
      SpectralWorkspace ws(s.snapshots.front().grid);
      for (std::size_t i = 0; i < s.snapshots.size(); ++i) {
        double h1 = 0.0;
        const double l2 = diff_l2_h1(ws, s.snapshots[i], point.snapshots[i], h1);
        e.l2 = std::max(e.l2, l2);
        e.h1 = std::max(e.h1, h1);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

const char* norm_name(ErrorNorm norm) {
  switch (norm) {
    case ErrorNorm::pointwise: return "pointwise";
    case ErrorNorm::l2: return "l2";
    case ErrorNorm::h1: return "h1";
  }
  return "?";
}

RateFit fit_power_law(std::span<const double> x, std::span<const double> y, double floor) {
  if (x.size() != y.size()) throw ConfigError("rate fit: x and y lengths differ");
  if (x.size() < 3) throw ConfigError("rate fit needs at least three samples");
  RateFit fit;
  fit.samples = x.size();
  fit.eps_min = *std::min_element(x.begin(), x.end());
  fit.eps_max = *std::max_element(x.begin(), x.end());
  if (!(fit.eps_min > 0.0)) throw ConfigError("rate fit needs positive abscissae");
  for (double v : y) {
    if (!(v > floor)) {
      fit.degenerate = true;
      fit.note = floor > 0.0 ? "error at round-off level; exact agreement, no rate fitted"
                             : "non-positive error value; exact agreement, no rate fitted";
      fit.delta = fit.prefactor = fit.residual = std::nan("");
      return fit;
    }
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (sxx == 0.0) throw ConfigError("rate fit needs distinct abscissae");
  fit.delta = sxy / sxx;
  const double intercept = my - fit.delta * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(y[i]) - (intercept + fit.delta * std::log(x[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

RateFit fit_rate(std::span<const ErrorSample> samples, ErrorNorm which, double floor) {
  std::vector<double> eps, err;
  for (const ErrorSample& s : samples) {
    eps.push_back(s.epsilon);
    err.push_back(which == ErrorNorm::pointwise ? s.pointwise : which == ErrorNorm::l2 ? s.l2 : s.h1);
  }
  return fit_power_law(eps, err, floor);
}

double observed_order(double e_coarse, double e_fine, double ratio) {
  return std::log(e_coarse / e_fine) / std::log(ratio);
}

}  // namespace concnls
