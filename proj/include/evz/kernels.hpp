#pragma once

// Dense float kernels behind the frame-domain transforms.
//
// Every kernel has a scalar reference implementation; an AVX2 variant is
// selected at runtime when the CPU supports it. Variants are required to be
// bit-identical to the reference for every kernel except `sum`, whose
// accumulation order differs (exact for integer-valued data below 2^53).
//
// EVZ_SIMD=scalar in the environment forces the reference table.

#include <span>
#include <string_view>

namespace evz::kernels {

struct KernelTable {
  std::string_view name;
  /// dst[i] = value
  void (*fill)(std::span<float> dst, float value);
  /// dst[i] = src[i]
  void (*copy)(std::span<float> dst, std::span<const float> src);
  /// dst[i] += src[i]
  void (*accumulate)(std::span<float> dst, std::span<const float> src);
  /// dst[i] = wa * a[i] + wb * b[i], evaluated as two products and one add
  void (*blend)(std::span<float> dst, std::span<const float> a, std::span<const float> b, float wa, float wb);
  /// Sum in double precision.
  double (*sum)(std::span<const float> src);
};

const KernelTable& scalar() noexcept;

/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2() noexcept;

/// Table chosen at first use: AVX2 when available and not overridden.
const KernelTable& active() noexcept;

}  // namespace evz::kernels
