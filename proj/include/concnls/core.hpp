#pragma once

// Domain types shared by both solvers: the periodic grid, sampled fields,
// potential profiles and the two problem descriptions.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace concnls {

using cplx = std::complex<double>;

/// Invalid input, bad configuration, or a violated precondition.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A defect whose (mu, sign of V) combination lies outside the globally
/// well-posed range, requested without the override flag.
class AdmissibilityError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// A solver gave up: blow-up guard tripped or the implicit step failed.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform periodic grid on [-L, L) with M = 2^p nodes.
class Grid1D {
 public:
  Grid1D(double half_width, std::size_t num_points);

  double half_width() const { return half_width_; }
  double period() const { return 2.0 * half_width_; }
  std::size_t size() const { return size_; }
  double spacing() const { return spacing_; }
  double x(std::size_t m) const { return -half_width_ + static_cast<double>(m) * spacing_; }

  /// Index of the node at coordinate `x`, if `x` is a node (to within 1e-9 h).
  std::optional<std::size_t> node_index(double x) const;
  /// As node_index, but throws ConfigError when `x` is not a node.
  std::size_t index_of(double x) const;

  /// Angular wavenumber of FFT bin j (standard order: 0, 1, ..., M/2-1, -M/2, ..., -1).
  double wavenumber(std::size_t j) const;

  bool operator==(const Grid1D& other) const = default;

 private:
  double half_width_;
  std::size_t size_;
  double spacing_;
};

Grid1D make_grid(double half_width, std::size_t num_points);

/// Samples of a wavefunction on a grid at time `time`.
struct ComplexField {
  Grid1D grid;
  std::vector<cplx> values;
  double time = 0.0;

  ComplexField(Grid1D g, std::vector<cplx> v, double t = 0.0);
  explicit ComplexField(Grid1D g, double t = 0.0);

  /// sqrt(h * sum |psi_m|^2)
  double l2_norm() const;
};

// ---------------------------------------------------------------------------
// Potential profiles

struct GaussianProfile {
  double amplitude = 1.0;
  double width = 1.0;  // V(x) = amplitude * exp(-(x/width)^2)
};

struct BoxProfile {
  double height = 1.0;
  double half_width = 0.5;  // V = height on [-half_width, half_width]
};

/// Two Gaussians of equal amplitude centred at +-separation/2.
struct DoubleWellProfile {
  double amplitude = 1.0;
  double width = 1.0;
  double separation = 2.0;
};

/// Tabulated profile, linearly interpolated, zero outside the table.
struct SampledProfile {
  double origin = 0.0;
  double spacing = 1.0;
  std::vector<double> values;
};

struct ZeroProfile {};

struct PotentialMoments {
  double alpha = 0.0;             // integral of V
  double abs_first_moment = 0.0;  // integral of |x| |V|
};

class PotentialProfile {
 public:
  using Shape = std::variant<ZeroProfile, GaussianProfile, BoxProfile, DoubleWellProfile, SampledProfile>;

  PotentialProfile() = default;
  PotentialProfile(Shape shape);  // NOLINT(google-explicit-constructor)
  template <class S>
    requires std::is_constructible_v<Shape, S> && (!std::is_same_v<std::remove_cvref_t<S>, Shape>)
  PotentialProfile(S shape) : PotentialProfile(Shape(std::move(shape))) {}  // NOLINT(google-explicit-constructor)

  const Shape& shape() const { return shape_; }
  double operator()(double x) const;

  double sup_norm() const;
  bool has_negative_part() const;
  bool is_zero() const;

  /// Half-width beyond which |V| is below 1e-15 sup|V| (finite for every shape).
  double support_radius() const;

 private:
  Shape shape_{ZeroProfile{}};
};

/// Integral and absolute first moment of a profile. Closed forms for the
/// analytic shapes; composite trapezoid at the table resolution for samples.
PotentialMoments potential_moments(const PotentialProfile& profile);

/// Composite-trapezoid moments of any profile sampled at `spacing` on
/// [-radius, radius] (grid symmetric about 0). Used to check the closed forms.
PotentialMoments quadrature_moments(const PotentialProfile& profile, double spacing, double radius);

// ---------------------------------------------------------------------------
// Problems

struct DefectSpec {
  double site = 0.0;
  PotentialProfile profile;
  double power = 1.0;  // mu_k
};

/// Defect of the limit problem: site, strength alpha_k and power mu_k.
struct PointDefect {
  double site = 0.0;
  double strength = 0.0;
  double power = 1.0;
};

struct ScaledProblem {
  Grid1D grid{1.0, 2};
  std::vector<DefectSpec> defects;
  double epsilon = 1.0;
  std::vector<cplx> psi0;
  double horizon = 1.0;  // T
  double dt = 1e-3;
  bool allow_inadmissible = false;
  double blowup_factor = 1e3;

  std::size_t steps() const;
};

struct PointSolverOptions {
  double damping = 0.5;
  double tolerance = 1e-12;
  std::size_t max_iterations = 200;
  /// Periodic images summed on each side when building the torus kernel.
  std::size_t images = 256;
};

struct PointProblem {
  Grid1D grid{1.0, 2};
  std::vector<PointDefect> defects;
  std::vector<cplx> psi0;
  double horizon = 1.0;
  double dt = 1e-3;
  bool allow_inadmissible = false;
  PointSolverOptions options;

  std::size_t steps() const;
};

/// Throws ConfigError / AdmissibilityError.
void validate(const ScaledProblem& problem);
void validate(const PointProblem& problem);

/// Limit problem matching a scaled one: same grid, data and time lattice,
/// alpha_k taken from potential_moments of each V_k.
PointProblem limit_problem(const ScaledProblem& scaled);

/// q = |psi|^{2 mu} psi, with 0^{2 mu} = 0 for mu > 0.
inline cplx charge(cplx psi, double mu) {
  if (mu == 0.0) return psi;
  const double a2 = std::norm(psi);
  if (a2 == 0.0) return {0.0, 0.0};
  return std::pow(a2, mu) * psi;
}

/// Step indices round(i * steps / count), i = 1..count (deduplicated, ascending).
std::vector<std::size_t> output_lattice(std::size_t steps, std::size_t count);

/// Boundary traces and charges of the limit problem at t_n = n dt.
struct ChargeTrajectory {
  double dt = 0.0;
  std::vector<double> powers;                // mu_k
  std::vector<std::vector<cplx>> traces;     // [defect][n] psi(t_n, y_k)
  std::vector<std::vector<cplx>> charges;    // [defect][n] q_k(t_n)

  std::size_t steps() const { return traces.empty() ? 0 : traces.front().size() - 1; }
  double time(std::size_t n) const { return static_cast<double>(n) * dt; }
};

}  // namespace concnls
