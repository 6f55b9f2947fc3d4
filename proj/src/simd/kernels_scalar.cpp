#include "concnls/simd/kernels.hpp"

#include <cassert>

namespace concnls::simd {
namespace {

void cmul(std::span<cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

double sum_abs2(std::span<const cplx> a) {
  double s = 0.0;
  for (const cplx& z : a) s += std::norm(z);
  return s;
}

double weighted_sum_abs2(std::span<const cplx> a, std::span<const double> w) {
  assert(a.size() == w.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * std::norm(a[i]);
  return s;
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void duhamel_update(std::span<cplx> d, std::span<const cplx> e, std::span<const cplx> lead,
                    std::span<const cplx> trail, cplx q_new, cplx q_old) {
  assert(d.size() == e.size() && d.size() == lead.size() && d.size() == trail.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = e[i] * d[i] + lead[i] * q_new + trail[i] * q_old;
}

void axpy(std::span<cplx> a, cplx s, std::span<const cplx> b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

constexpr KernelTable kScalar{
    "scalar", cmul, sum_abs2, weighted_sum_abs2, dot, duhamel_update, axpy,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace concnls::simd
