#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace concnls::special {

/// exp(z^2) erfc(z) for Re z >= 0. Taylor series of erf for |z| < 1.5,
/// Laplace continued fraction (modified Lentz) beyond. Relative accuracy is
/// about 1e-15 on the ray arg z = -pi/4 used by the Duhamel weights.
std::complex<double> erfcx(std::complex<double> z);

/// erf(z) by its Maclaurin series; intended for |z| < 2.
std::complex<double> erf_series(std::complex<double> z);

template <std::size_t N>
struct GaussLegendreRule {
  std::array<double, N> nodes{};    // on [-1, 1]
  std::array<double, N> weights{};
};

/// 20-point Gauss-Legendre rule, computed once by Newton iteration.
const GaussLegendreRule<20>& gauss_legendre20();

}  // namespace concnls::special
