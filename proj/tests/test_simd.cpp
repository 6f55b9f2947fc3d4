#include <random>
#include <vector>

#include "concnls/simd/kernels.hpp"
#include "doctest.h"

using concnls::simd::cplx;
using concnls::simd::KernelTable;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

std::vector<double> random_real(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 10.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Lengths that exercise empty input, pure tails and several vector widths.
const std::size_t kSizes[] = {0, 1, 2, 3, 5, 8, 17, 64, 1023, 4096};

}  // namespace

TEST_CASE("scalar table is always available") {
  const KernelTable& s = concnls::simd::scalar_kernels();
  CHECK(s.cmul != nullptr);
  CHECK(s.dot != nullptr);
  CHECK(!concnls::simd::kernels().name.empty());
}

TEST_CASE("vector kernels match the scalar reference") {
  const KernelTable* v = concnls::simd::avx2_kernels();
  if (v == nullptr) {
    MESSAGE("AVX2 table not available on this build or CPU; nothing to compare");
    return;
  }
  const KernelTable& s = concnls::simd::scalar_kernels();
  std::mt19937_64 rng(20240611);

  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto a = random_complex(n, rng);
    const auto b = random_complex(n, rng);
    const auto e = random_complex(n, rng);
    const auto w = random_real(n, rng);

    {  // cmul
      auto x = a;
      auto y = a;
      s.cmul(x, b);
      v->cmul(y, b);
      CHECK(max_diff(x, y) <= 1e-14);
    }
    {  // axpy
      auto x = a;
      auto y = a;
      s.axpy(x, {0.3, -1.7}, b);
      v->axpy(y, {0.3, -1.7}, b);
      CHECK(max_diff(x, y) <= 1e-14);
    }
    {  // sum_abs2
      const double r = s.sum_abs2(a);
      CHECK(std::abs(v->sum_abs2(a) - r) <= 1e-13 * std::max(1.0, r));
    }
    {  // weighted_sum_abs2
      const double r = s.weighted_sum_abs2(a, w);
      CHECK(std::abs(v->weighted_sum_abs2(a, w) - r) <= 1e-13 * std::max(1.0, r));
    }
    {  // dot
      const cplx r = s.dot(a, b);
      CHECK(std::abs(v->dot(a, b) - r) <= 1e-12 * std::max(1.0, static_cast<double>(n)));
    }
    {  // duhamel_update
      auto x = a;
      auto y = a;
      for (int rep = 0; rep < 3; ++rep) {
        s.duhamel_update(x, e, b, a, {0.5, 0.25}, {-1.0, 2.0});
        v->duhamel_update(y, e, b, a, {0.5, 0.25}, {-1.0, 2.0});
      }
      double scale = 1.0;
      for (const cplx& z : x) scale = std::max(scale, std::abs(z));
      CHECK(max_diff(x, y) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("kernels compute what they document") {
  const KernelTable& s = concnls::simd::kernels();
  std::vector<cplx> a = {{1, 2}, {3, -1}, {0, 1}};
  const std::vector<cplx> b = {{2, 0}, {0, 1}, {1, 1}};
  CHECK(s.dot(a, b) == cplx{2 + 1 - 1, 4 + 3 + 1});
  CHECK(s.sum_abs2(a) == doctest::Approx(5 + 10 + 1));
  const std::vector<double> w = {1, 0, 2};
  CHECK(s.weighted_sum_abs2(a, w) == doctest::Approx(5 + 2));
  std::vector<cplx> d = {{1, 0}, {0, 0}, {2, 0}};
  const std::vector<cplx> e = {{0, 1}, {1, 0}, {1, 0}};
  s.duhamel_update(d, e, b, b, {1, 0}, {0, 0});
  CHECK(d[0] == cplx{2, 1});
  CHECK(d[1] == cplx{0, 1});
  CHECK(d[2] == cplx{3, 1});
  s.cmul(a, b);
  CHECK(a[0] == cplx{2, 4});
}
