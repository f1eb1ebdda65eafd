#include <cstdlib>
#include <string_view>

#include "hamcheck/kernels.hpp"

namespace hamcheck::simd {

#if defined(HAMCHECK_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

const KernelTable* avx2_kernels() {
#if defined(HAMCHECK_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  if (supported) return &avx2::table();
#endif
  return nullptr;
}

const KernelTable* find_kernels(std::string_view name) {
  if (name == "scalar") return &scalar_kernels();
  if (name == "avx2") return avx2_kernels();
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    if (const char* env = std::getenv("HAMCHECK_KERNELS")) {
      if (const KernelTable* t = find_kernels(env)) return *t;
    }
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace hamcheck::simd
