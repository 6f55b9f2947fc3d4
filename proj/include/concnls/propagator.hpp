#pragma once

// The free Schrodinger group for i psi_t = -psi_xx.
//
// Fourier convention: a plane wave e^{ikx} evolves to e^{-ik^2 t} e^{ikx},
// so the convolution kernel is U(t,x) = (4 pi i t)^{-1/2} exp(i x^2 / 4t)
// with the principal square root. On the grid, U(t) is applied spectrally
// (diagonal in the discrete Fourier basis of the periodic box).

#include <memory>
#include <span>
#include <vector>

#include "concnls/core.hpp"

namespace concnls {

/// U(t, x). Throws ConfigError for t == 0.
cplx kernel_value(double t, double x);

/// In-place FFT workspace for one grid. Not shareable between threads;
/// create one per worker.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const Grid1D& grid);
  ~SpectralWorkspace();
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;
  SpectralWorkspace(SpectralWorkspace&&) noexcept;
  SpectralWorkspace& operator=(SpectralWorkspace&&) noexcept;

  const Grid1D& grid() const { return grid_; }
  std::span<cplx> buffer();

  /// Unnormalised forward DFT of the buffer, in place.
  void forward();
  /// Inverse DFT including the 1/M factor, in place.
  void backward();

  /// k_j^2 per FFT bin.
  std::span<const double> k2() const { return k2_; }
  /// k_j^2 with the Nyquist bin zeroed; weights of the spectral H1 seminorm.
  std::span<const double> derivative_weights() const { return k2_derivative_; }

  /// Multipliers exp(-i k_j^2 t).
  std::vector<cplx> evolution_multiplier(double t) const;

 private:
  struct Plans;
  Grid1D grid_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> k2_;
  std::vector<double> k2_derivative_;
};

/// U(t) psi, time tag advanced by t.
ComplexField free_evolve(const ComplexField& field, double t);
void free_evolve(SpectralWorkspace& ws, std::span<cplx> values, double t);

/// (U(t_n) psi0)(y) for each t_n; y must be a grid node.
std::vector<cplx> free_trace(const ComplexField& psi0, std::span<const double> times, double site);

/// ||psi'||^2 = h sum |psi'_m|^2 with the spectral derivative (Parseval).
double kinetic_energy(SpectralWorkspace& ws, std::span<const cplx> values);
/// Same, from an unnormalised spectrum F = DFT(psi).
double kinetic_energy_from_spectrum(const SpectralWorkspace& ws, std::span<const cplx> spectrum);

/// Nodal values of the spectral derivative (Nyquist bin dropped).
ComplexField spectral_derivative(const ComplexField& field);

}  // namespace concnls
