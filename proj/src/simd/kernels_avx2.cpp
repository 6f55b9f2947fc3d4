// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached through
// avx2_kernels() after a runtime CPU check.

#include <immintrin.h>

#include <cassert>

#include "concnls/simd/kernels.hpp"

namespace concnls::simd {
namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d mul2(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d broadcast(cplx z) { return _mm256_setr_pd(z.real(), z.imag(), z.real(), z.imag()); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline cplx hsum_complex(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  alignas(16) double out[2];
  _mm_store_pd(out, _mm_add_pd(lo, hi));
  return {out[0], out[1]};
}

void cmul(std::span<cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(&a[i], mul2(load2(&a[i]), load2(&b[i])));
  for (; i < n; ++i) a[i] *= b[i];
}

double sum_abs2(std::span<const cplx> a) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = load2(&a[i]);
    const __m256d x1 = load2(&a[i + 2]);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    acc1 = _mm256_fmadd_pd(x1, x1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += std::norm(a[i]);
  return s;
}

double weighted_sum_abs2(std::span<const cplx> a, std::span<const double> w) {
  assert(a.size() == w.size());
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = load2(&a[i]);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(&w[i])), 0b01010000);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(x, x), ww, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * std::norm(a[i]);
  return s;
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  // Accumulate re*re, im*im and cross terms separately; combine once at the end.
  __m256d acc_rr = _mm256_setzero_pd();  // [ar*br, ai*bi, ...]
  __m256d acc_rx = _mm256_setzero_pd();  // [ar*bi, ai*br, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = load2(&a[i]);
    const __m256d y = load2(&b[i]);
    acc_rr = _mm256_fmadd_pd(x, y, acc_rr);
    acc_rx = _mm256_fmadd_pd(x, _mm256_permute_pd(y, 0x5), acc_rx);
  }
  alignas(32) double rr[4];
  alignas(32) double rx[4];
  _mm256_store_pd(rr, acc_rr);
  _mm256_store_pd(rx, acc_rx);
  double re = (rr[0] - rr[1]) + (rr[2] - rr[3]);
  double im = (rx[0] + rx[1]) + (rx[2] + rx[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void duhamel_update(std::span<cplx> d, std::span<const cplx> e, std::span<const cplx> lead,
                    std::span<const cplx> trail, cplx q_new, cplx q_old) {
  assert(d.size() == e.size() && d.size() == lead.size() && d.size() == trail.size());
  const std::size_t n = d.size();
  const __m256d qn = broadcast(q_new);
  const __m256d qo = broadcast(q_old);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d r = mul2(load2(&e[i]), load2(&d[i]));
    r = _mm256_add_pd(r, mul2(load2(&lead[i]), qn));
    r = _mm256_add_pd(r, mul2(load2(&trail[i]), qo));
    store2(&d[i], r);
  }
  for (; i < n; ++i) d[i] = e[i] * d[i] + lead[i] * q_new + trail[i] * q_old;
}

void axpy(std::span<cplx> a, cplx s, std::span<const cplx> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  const __m256d sv = broadcast(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(&a[i], _mm256_add_pd(load2(&a[i]), mul2(load2(&b[i]), sv)));
  for (; i < n; ++i) a[i] += s * b[i];
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{
    "avx2", cmul, sum_abs2, weighted_sum_abs2, dot, duhamel_update, axpy,
};

}  // namespace concnls::simd
