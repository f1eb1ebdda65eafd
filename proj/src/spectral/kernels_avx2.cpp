// Compiled with -mavx2 only (no -mfma) so products and sums round exactly like the scalar path.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "hamcheck/kernels.hpp"

namespace hamcheck::simd::avx2 {
namespace {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = y.size();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x.data() + i, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), va));
  for (; i < n; ++i) x[i] *= alpha;
}

void complex_multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t n = out.size() & ~std::size_t{1};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a.data() + i);    // ar0 ai0 ar1 ai1
    const __m256d vb = _mm256_loadu_pd(b.data() + i);    // br0 bi0 br1 bi1
    const __m256d b_re = _mm256_movedup_pd(vb);          // br0 br0 br1 br1
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);     // bi0 bi0 bi1 bi1
    const __m256d a_swap = _mm256_permute_pd(va, 0x5);   // ai0 ar0 ai1 ar1
    const __m256d t1 = _mm256_mul_pd(va, b_re);          // ar*br ai*br
    const __m256d t2 = _mm256_mul_pd(a_swap, b_im);      // ai*bi ar*bi
    _mm256_storeu_pd(out.data() + i, _mm256_addsub_pd(t1, t2));
  }
  for (; i + 1 < n; i += 2) {
    const double ar = a[i], ai = a[i + 1], br = b[i], bi = b[i + 1];
    out[i] = ar * br - ai * bi;
    out[i + 1] = ai * br + ar * bi;
  }
}

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x.data() + i));
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += x[i];
  return total;
}

double max_abs(std::span<const double> x) {
  const std::size_t n = x.size();
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(x.data() + i)));
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double m = std::max(std::max(s[0], s[1]), std::max(s[2], s[3]));
  for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

bool all_finite(std::span<const double> x) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    // v - v is 0 for finite lanes and NaN for inf/NaN lanes.
    const __m256d d = _mm256_sub_pd(v, v);
    if (_mm256_movemask_pd(_mm256_cmp_pd(d, d, _CMP_ORD_Q)) != 0xF) return false;
  }
  for (; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{"avx2", multiply, axpy, scale, complex_multiply, sum, max_abs, all_finite};
  return t;
}

}  // namespace hamcheck::simd::avx2
