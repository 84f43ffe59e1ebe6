#include <cstdlib>
#include <string_view>

#include "evz/kernels.hpp"

namespace evz::kernels {

#if defined(EVZ_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_table() noexcept;
}
#endif

const KernelTable* avx2() noexcept {
#if defined(EVZ_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("EVZ_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar();
    const KernelTable* simd = avx2();
    return simd != nullptr ? simd : &scalar();
  }();
  return *chosen;
}

}  // namespace evz::kernels
