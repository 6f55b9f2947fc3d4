#include "concnls/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "concnls/simd/kernels.hpp"

namespace concnls {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

cplx kernel_value(double t, double x) {
  if (t == 0.0) throw ConfigError("free kernel U(t, x) is not a function at t = 0");
  // Principal branch of (4 pi i t)^{-1/2}: arg(4 pi i t) = +-pi/2.
  const double amp = 1.0 / std::sqrt(4.0 * std::numbers::pi * std::abs(t));
  const cplx prefactor = std::polar(amp, t > 0.0 ? -std::numbers::pi / 4.0 : std::numbers::pi / 4.0);
  return prefactor * std::polar(1.0, x * x / (4.0 * t));
}

struct SpectralWorkspace::Plans {
  fftw_complex* data = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::size_t n = 0;

  explicit Plans(std::size_t size) : n(size) {
    std::lock_guard lock(planner_mutex());
    data = fftw_alloc_complex(n);
    forward = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(data);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

SpectralWorkspace::SpectralWorkspace(const Grid1D& grid)
    : grid_(grid), plans_(std::make_unique<Plans>(grid.size())), k2_(grid.size()), k2_derivative_(grid.size()) {
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = grid.wavenumber(j);
    k2_[j] = k * k;
    k2_derivative_[j] = (j == grid.size() / 2) ? 0.0 : k * k;
  }
}

SpectralWorkspace::~SpectralWorkspace() = default;
SpectralWorkspace::SpectralWorkspace(SpectralWorkspace&&) noexcept = default;
SpectralWorkspace& SpectralWorkspace::operator=(SpectralWorkspace&&) noexcept = default;

std::span<cplx> SpectralWorkspace::buffer() {
  // fftw_complex is layout-compatible with std::complex<double>.
  return {reinterpret_cast<cplx*>(plans_->data), plans_->n};
}

void SpectralWorkspace::forward() { fftw_execute(plans_->forward); }

void SpectralWorkspace::backward() {
  fftw_execute(plans_->backward);
  const double scale = 1.0 / static_cast<double>(plans_->n);
  for (cplx& z : buffer()) z *= scale;
}

std::vector<cplx> SpectralWorkspace::evolution_multiplier(double t) const {
  std::vector<cplx> m(k2_.size());
  for (std::size_t j = 0; j < k2_.size(); ++j) m[j] = std::polar(1.0, -k2_[j] * t);
  return m;
}

void free_evolve(SpectralWorkspace& ws, std::span<cplx> values, double t) {
  if (t == 0.0) return;
  auto buf = ws.buffer();
  std::copy(values.begin(), values.end(), buf.begin());
  ws.forward();
  const auto mult = ws.evolution_multiplier(t);
  simd::kernels().cmul(buf, mult);
  ws.backward();
  std::copy(buf.begin(), buf.end(), values.begin());
}

ComplexField free_evolve(const ComplexField& field, double t) {
  ComplexField out = field;
  SpectralWorkspace ws(field.grid);
  free_evolve(ws, out.values, t);
  out.time = field.time + t;
  return out;
}

std::vector<cplx> free_trace(const ComplexField& psi0, std::span<const double> times, double site) {
  const Grid1D& grid = psi0.grid;
  const std::size_t p = grid.index_of(site);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw ConfigError("free_trace needs nonnegative ascending times");
    }
  }
  SpectralWorkspace ws(grid);
  auto buf = ws.buffer();
  std::copy(psi0.values.begin(), psi0.values.end(), buf.begin());
  ws.forward();

  // psi(t, x_p) = (1/M) sum_j F_j e^{-i k_j^2 t} e^{2 pi i j p / M}. Bins whose
  // amplitude is below 1e-20 of the peak cannot affect a double result.
  const std::size_t M = grid.size();
  double peak = 0.0;
  for (const cplx& z : buf) peak = std::max(peak, std::abs(z));
  std::vector<cplx> weight;
  std::vector<double> k2;
  for (std::size_t j = 0; j < M; ++j) {
    if (std::abs(buf[j]) <= 1e-20 * peak) continue;
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * p) % M) / static_cast<double>(M);
    weight.push_back(buf[j] * std::polar(1.0, phase) / static_cast<double>(M));
    k2.push_back(ws.k2()[j]);
  }

  std::vector<cplx> out(times.size());
  std::vector<cplx> rot(weight.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = 0; j < k2.size(); ++j) rot[j] = std::polar(1.0, -k2[j] * times[i]);
    out[i] = simd::kernels().dot(weight, rot);
  }
  return out;
}

double kinetic_energy_from_spectrum(const SpectralWorkspace& ws, std::span<const cplx> spectrum) {
  const Grid1D& g = ws.grid();
  const double M = static_cast<double>(g.size());
  return g.spacing() / M * simd::kernels().weighted_sum_abs2(spectrum, ws.derivative_weights());
}

double kinetic_energy(SpectralWorkspace& ws, std::span<const cplx> values) {
  auto buf = ws.buffer();
  std::copy(values.begin(), values.end(), buf.begin());
  ws.forward();
  return kinetic_energy_from_spectrum(ws, buf);
}

ComplexField spectral_derivative(const ComplexField& field) {
  SpectralWorkspace ws(field.grid);
  auto buf = ws.buffer();
  std::copy(field.values.begin(), field.values.end(), buf.begin());
  ws.forward();
  const std::size_t M = field.grid.size();
  for (std::size_t j = 0; j < M; ++j) {
    buf[j] = (j == M / 2) ? cplx{} : buf[j] * cplx{0.0, field.grid.wavenumber(j)};
  }
  ws.backward();
  return ComplexField(field.grid, std::vector<cplx>(buf.begin(), buf.end()), field.time);
}

}  // namespace concnls
