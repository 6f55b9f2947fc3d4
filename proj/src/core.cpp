#include "concnls/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace concnls {

namespace {

// |V| < 1e-15 sup|V| beyond this many widths of a unit Gaussian.
const double kGaussianCutoff = std::sqrt(std::log(1e15));

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double gaussian_abs_moment(double amplitude, double width, double centre) {
  const double c = std::abs(centre);
  return std::abs(amplitude) * width *
         (c * std::sqrt(std::numbers::pi) * std::erf(c / width) + width * std::exp(-(c * c) / (width * width)));
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

Grid1D::Grid1D(double half_width, std::size_t num_points)
    : half_width_(half_width), size_(num_points), spacing_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("grid half-width L must be positive and finite, got " + format_number(half_width));
  }
  if (num_points < 2 || !std::has_single_bit(num_points)) {
    throw ConfigError("grid size M must be a power of two >= 2, got " + std::to_string(num_points));
  }
  spacing_ = 2.0 * half_width / static_cast<double>(num_points);
}

Grid1D make_grid(double half_width, std::size_t num_points) { return Grid1D(half_width, num_points); }

std::optional<std::size_t> Grid1D::node_index(double x) const {
  const double s = (x + half_width_) / spacing_;
  const double r = std::round(s);
  if (std::abs(s - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(size_)) return std::nullopt;
  return static_cast<std::size_t>(r);
}

std::size_t Grid1D::index_of(double x) const {
  if (auto idx = node_index(x)) return *idx;
  throw ConfigError("coordinate " + format_number(x) + " is not a grid node (h = " + format_number(spacing_) + ")");
}

double Grid1D::wavenumber(std::size_t j) const {
  const auto m = static_cast<std::ptrdiff_t>(size_);
  auto jj = static_cast<std::ptrdiff_t>(j);
  if (jj >= m / 2) jj -= m;
  return std::numbers::pi * static_cast<double>(jj) / half_width_;
}

ComplexField::ComplexField(Grid1D g, std::vector<cplx> v, double t) : grid(g), values(std::move(v)), time(t) {
  if (values.size() != grid.size()) {
    throw ConfigError("field has " + std::to_string(values.size()) + " samples, grid has " +
                      std::to_string(grid.size()));
  }
}

ComplexField::ComplexField(Grid1D g, double t) : grid(g), values(g.size()), time(t) {}

double ComplexField::l2_norm() const {
  double s = 0.0;
  for (const cplx& z : values) s += std::norm(z);
  return std::sqrt(grid.spacing() * s);
}

// ---------------------------------------------------------------------------

PotentialProfile::PotentialProfile(Shape shape) : shape_(std::move(shape)) {
  std::visit(overloaded{
                 [](const ZeroProfile&) {},
                 [](const GaussianProfile& g) {
                   if (!(g.width > 0.0) || !std::isfinite(g.amplitude)) throw ConfigError("gaussian profile needs width > 0");
                 },
                 [](const BoxProfile& b) {
                   if (!(b.half_width > 0.0) || !std::isfinite(b.height)) throw ConfigError("box profile needs half_width > 0");
                 },
                 [](const DoubleWellProfile& d) {
                   if (!(d.width > 0.0) || !(d.separation >= 0.0) || !std::isfinite(d.amplitude)) {
                     throw ConfigError("double-well profile needs width > 0 and separation >= 0");
                   }
                 },
                 [](const SampledProfile& s) {
                   if (!(s.spacing > 0.0)) throw ConfigError("sampled profile needs spacing > 0");
                   for (double v : s.values) {
                     if (!std::isfinite(v)) throw ConfigError("sampled profile contains a non-finite value");
                   }
                 },
             },
             shape_);
}

double PotentialProfile::operator()(double x) const {
  return std::visit(overloaded{
                        [](const ZeroProfile&) { return 0.0; },
                        [x](const GaussianProfile& g) {
                          const double u = x / g.width;
                          return g.amplitude * std::exp(-u * u);
                        },
                        [x](const BoxProfile& b) { return std::abs(x) <= b.half_width ? b.height : 0.0; },
                        [x](const DoubleWellProfile& d) {
                          const double u = (x - 0.5 * d.separation) / d.width;
                          const double w = (x + 0.5 * d.separation) / d.width;
                          return d.amplitude * (std::exp(-u * u) + std::exp(-w * w));
                        },
                        [x](const SampledProfile& s) {
                          if (s.values.empty()) return 0.0;
                          const double pos = (x - s.origin) / s.spacing;
                          if (pos < 0.0 || pos > static_cast<double>(s.values.size() - 1)) return 0.0;
                          const auto i = std::min(static_cast<std::size_t>(pos), s.values.size() - 1);
                          if (i + 1 >= s.values.size()) return s.values[i];
                          const double f = pos - static_cast<double>(i);
                          return (1.0 - f) * s.values[i] + f * s.values[i + 1];
                        },
                    },
                    shape_);
}

double PotentialProfile::sup_norm() const {
  return std::visit(overloaded{
                        [](const ZeroProfile&) { return 0.0; },
                        [](const GaussianProfile& g) { return std::abs(g.amplitude); },
                        [](const BoxProfile& b) { return std::abs(b.height); },
                        [this](const DoubleWellProfile& d) {
                          // Maximum sits at a well centre or at the midpoint.
                          return std::max(std::abs((*this)(0.5 * d.separation)), std::abs((*this)(0.0)));
                        },
                        [](const SampledProfile& s) {
                          double m = 0.0;
                          for (double v : s.values) m = std::max(m, std::abs(v));
                          return m;
                        },
                    },
                    shape_);
}

bool PotentialProfile::has_negative_part() const {
  return std::visit(overloaded{
                        [](const ZeroProfile&) { return false; },
                        [](const GaussianProfile& g) { return g.amplitude < 0.0; },
                        [](const BoxProfile& b) { return b.height < 0.0; },
                        [](const DoubleWellProfile& d) { return d.amplitude < 0.0; },
                        [](const SampledProfile& s) {
                          return std::any_of(s.values.begin(), s.values.end(), [](double v) { return v < 0.0; });
                        },
                    },
                    shape_);
}

bool PotentialProfile::is_zero() const { return sup_norm() == 0.0; }

double PotentialProfile::support_radius() const {
  return std::visit(overloaded{
                        [](const ZeroProfile&) { return 0.0; },
                        [](const GaussianProfile& g) { return kGaussianCutoff * g.width; },
                        [](const BoxProfile& b) { return b.half_width; },
                        [](const DoubleWellProfile& d) { return 0.5 * d.separation + kGaussianCutoff * d.width; },
                        [](const SampledProfile& s) {
                          if (s.values.empty()) return 0.0;
                          const double last = s.origin + s.spacing * static_cast<double>(s.values.size() - 1);
                          return std::max(std::abs(s.origin), std::abs(last));
                        },
                    },
                    shape_);
}

PotentialMoments potential_moments(const PotentialProfile& profile) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  return std::visit(
      overloaded{
          [](const ZeroProfile&) { return PotentialMoments{}; },
          [&](const GaussianProfile& g) {
            return PotentialMoments{g.amplitude * g.width * sqrt_pi, std::abs(g.amplitude) * g.width * g.width};
          },
          [](const BoxProfile& b) {
            return PotentialMoments{2.0 * b.half_width * b.height, std::abs(b.height) * b.half_width * b.half_width};
          },
          [&](const DoubleWellProfile& d) {
            return PotentialMoments{2.0 * d.amplitude * d.width * sqrt_pi,
                                    2.0 * gaussian_abs_moment(d.amplitude, d.width, 0.5 * d.separation)};
          },
          [](const SampledProfile& s) {
            PotentialMoments m;
            const std::size_t n = s.values.size();
            for (std::size_t i = 0; i < n; ++i) {
              const double wgt = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
              const double x = s.origin + s.spacing * static_cast<double>(i);
              m.alpha += wgt * s.values[i];
              m.abs_first_moment += wgt * std::abs(x) * std::abs(s.values[i]);
            }
            m.alpha *= s.spacing;
            m.abs_first_moment *= s.spacing;
            if (!std::isfinite(m.alpha) || !std::isfinite(m.abs_first_moment)) {
              throw ConfigError("potential moments are not finite");
            }
            return m;
          },
      },
      profile.shape());
}

PotentialMoments quadrature_moments(const PotentialProfile& profile, double spacing, double radius) {
  if (!(spacing > 0.0) || !(radius > 0.0)) throw ConfigError("quadrature needs spacing > 0 and radius > 0");
  const auto half = static_cast<std::ptrdiff_t>(std::ceil(radius / spacing));
  PotentialMoments m;
  for (std::ptrdiff_t i = -half; i <= half; ++i) {
    const double x = static_cast<double>(i) * spacing;
    const double wgt = (i == -half || i == half) ? 0.5 : 1.0;
    const double v = profile(x);
    m.alpha += wgt * v;
    m.abs_first_moment += wgt * std::abs(x) * std::abs(v);
  }
  m.alpha *= spacing;
  m.abs_first_moment *= spacing;
  return m;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t step_count(double horizon, double dt) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("time horizon T must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step dt must be positive");
  const double n = std::round(horizon / dt);
  if (n < 1.0 || std::abs(n * dt - horizon) > 1e-9 * horizon) {
    throw ConfigError("T = " + format_number(horizon) + " is not an integer multiple of dt = " + format_number(dt));
  }
  return static_cast<std::size_t>(n);
}

void check_sites(const Grid1D& grid, const std::vector<double>& sites) {
  std::vector<std::size_t> idx;
  for (double y : sites) idx.push_back(grid.index_of(y));
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
    throw ConfigError("defect sites must be distinct");
  }
}

}  // namespace

std::size_t ScaledProblem::steps() const { return step_count(horizon, dt); }
std::size_t PointProblem::steps() const { return step_count(horizon, dt); }

void validate(const ScaledProblem& p) {
  if (!(p.epsilon > 0.0) || !std::isfinite(p.epsilon)) throw ConfigError("epsilon must be positive");
  (void)p.steps();
  if (p.psi0.size() != p.grid.size()) throw ConfigError("psi0 length does not match the grid");
  if (p.grid.spacing() > p.epsilon / 8.0 * (1.0 + 1e-12)) {
    throw ConfigError("resolution rule h <= epsilon/8 violated: h = " + format_number(p.grid.spacing()) +
                      ", epsilon = " + format_number(p.epsilon));
  }
  if (!(p.blowup_factor > 1.0)) throw ConfigError("blow-up factor must exceed 1");
  std::vector<double> sites;
  for (const DefectSpec& d : p.defects) {
    sites.push_back(d.site);
    if (!(d.power >= 0.0) || !std::isfinite(d.power)) throw ConfigError("defect power mu must be >= 0");
    if (p.allow_inadmissible) continue;
    if (d.power == 0.0) throw AdmissibilityError("defect power mu must be > 0 (mu = 0 only with the override flag)");
    if (d.profile.has_negative_part() && d.power >= 1.0) {
      throw AdmissibilityError("defect at y = " + format_number(d.site) + " has a negative part and mu = " +
                               format_number(d.power) +
                               "; the uniform H1 bound needs V >= 0 or 0 < mu < 1 (pass the override flag to explore)");
    }
  }
  check_sites(p.grid, sites);
}

void validate(const PointProblem& p) {
  (void)p.steps();
  if (p.psi0.size() != p.grid.size()) throw ConfigError("psi0 length does not match the grid");
  if (!(p.options.damping > 0.0 && p.options.damping <= 1.0)) throw ConfigError("damping must lie in (0, 1]");
  if (!(p.options.tolerance > 0.0)) throw ConfigError("fixed-point tolerance must be positive");
  if (p.options.max_iterations == 0) throw ConfigError("max_iterations must be positive");
  std::vector<double> sites;
  const bool any_focusing =
      std::any_of(p.defects.begin(), p.defects.end(), [](const PointDefect& d) { return d.strength < 0.0; });
  for (const PointDefect& d : p.defects) {
    sites.push_back(d.site);
    if (!(d.power >= 0.0) || !std::isfinite(d.power) || !std::isfinite(d.strength)) {
      throw ConfigError("defect strength must be finite and power mu >= 0");
    }
    if (p.allow_inadmissible) continue;
    if (d.power == 0.0) throw AdmissibilityError("defect power mu must be > 0 (mu = 0 only with the override flag)");
    if (any_focusing && d.power >= 1.0) {
      throw AdmissibilityError("a defect has alpha < 0, which requires 0 < mu < 1 at every defect; mu = " +
                               format_number(d.power) + " at y = " + format_number(d.site) +
                               " (pass the override flag to explore)");
    }
  }
  check_sites(p.grid, sites);
}

std::vector<std::size_t> output_lattice(std::size_t steps, std::size_t count) {
  if (steps == 0 || count == 0) throw ConfigError("output lattice needs steps > 0 and count > 0");
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i <= count; ++i) {
    const auto n = static_cast<std::size_t>(
        std::llround(static_cast<double>(i) * static_cast<double>(steps) / static_cast<double>(count)));
    if (n >= 1 && (idx.empty() || n > idx.back())) idx.push_back(std::min(n, steps));
  }
  return idx;
}

PointProblem limit_problem(const ScaledProblem& scaled) {
  PointProblem p;
  p.grid = scaled.grid;
  p.psi0 = scaled.psi0;
  p.horizon = scaled.horizon;
  p.dt = scaled.dt;
  p.allow_inadmissible = scaled.allow_inadmissible;
  for (const DefectSpec& d : scaled.defects) {
    p.defects.push_back({d.site, potential_moments(d.profile).alpha, d.power});
  }
  return p;
}

}  // namespace concnls
