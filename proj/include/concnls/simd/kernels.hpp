#pragma once

// Data-parallel inner loops shared by the solvers.
//
// Every kernel has a portable scalar reference implementation. On x86-64
// builds an AVX2+FMA table is compiled into a separate translation unit and
// selected at runtime when the CPU supports it. Reductions in the vector
// variants use a different summation order than the scalar ones, so results
// agree to rounding, not bit for bit; within one process the selected table
// never changes, which keeps runs reproducible.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace concnls::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  /// a[i] *= b[i]
  void (*cmul)(std::span<cplx> a, std::span<const cplx> b);

  /// sum |a[i]|^2
  double (*sum_abs2)(std::span<const cplx> a);

  /// sum w[i] |a[i]|^2
  double (*weighted_sum_abs2)(std::span<const cplx> a, std::span<const double> w);

  /// sum a[i] * b[i] (no conjugation)
  cplx (*dot)(std::span<const cplx> a, std::span<const cplx> b);

  /// d[i] = e[i] * d[i] + lead[i] * q_new + trail[i] * q_old
  void (*duhamel_update)(std::span<cplx> d, std::span<const cplx> e, std::span<const cplx> lead,
                         std::span<const cplx> trail, cplx q_new, cplx q_old);

  /// a[i] += s * b[i]
  void (*axpy)(std::span<cplx> a, cplx s, std::span<const cplx> b);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 table was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Best available table; CONCNLS_SIMD=scalar in the environment forces the reference path.
const KernelTable& kernels();

}  // namespace concnls::simd
