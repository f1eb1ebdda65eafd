#pragma once

// Data-parallel grid kernels used by the spectral integrator.
//
// Every kernel has a portable scalar reference and, on x86-64 builds where the compiler
// accepts -mavx2, an AVX2 variant. The active table is chosen once at runtime from CPUID;
// HAMCHECK_KERNELS=scalar|avx2 overrides the choice.
//
// Elementwise kernels are bitwise identical across variants (no FMA contraction, same
// operation order). Reductions use four interleaved partial sums combined as
// (s0 + s1) + (s2 + s3) in both variants, so they match bitwise as well.

#include <span>
#include <string_view>

namespace hamcheck::simd {

struct KernelTable {
  const char* name;
  /// out[i] = a[i] * b[i]
  void (*multiply)(std::span<const double> a, std::span<const double> b, std::span<double> out);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
  /// x[i] *= alpha
  void (*scale)(double alpha, std::span<double> x);
  /// Interleaved complex product: (re, im) pairs, out may alias a.
  void (*complex_multiply)(std::span<const double> a, std::span<const double> b, std::span<double> out);
  double (*sum)(std::span<const double> x);
  double (*max_abs)(std::span<const double> x);
  bool (*all_finite)(std::span<const double> x);
};

const KernelTable& scalar_kernels();

/// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// The table selected for this process.
const KernelTable& active_kernels();

/// Looks a table up by name ("scalar", "avx2"); nullptr if unavailable.
const KernelTable* find_kernels(std::string_view name);

}  // namespace hamcheck::simd
