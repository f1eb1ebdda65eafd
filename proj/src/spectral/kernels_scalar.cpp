#include <algorithm>
#include <cmath>

#include "hamcheck/kernels.hpp"

namespace hamcheck::simd {
namespace {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

void complex_multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i + 1 < out.size(); i += 2) {
    const double ar = a[i], ai = a[i + 1], br = b[i], bi = b[i + 1];
    out[i] = ar * br - ai * bi;
    out[i + 1] = ai * br + ar * bi;
  }
}

double sum(std::span<const double> x) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4)
    for (std::size_t l = 0; l < 4; ++l) s[l] += x[i + l];
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < x.size(); ++i) total += x[i];
  return total;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", multiply, axpy, scale, complex_multiply, sum, max_abs, all_finite};
  return table;
}

}  // namespace hamcheck::simd
