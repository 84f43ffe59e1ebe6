#include <algorithm>
#include <cstddef>

#include "evz/kernels.hpp"

namespace evz::kernels {
namespace {

void fill_scalar(std::span<float> dst, float value) { std::fill(dst.begin(), dst.end(), value); }

void copy_scalar(std::span<float> dst, std::span<const float> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
}

void accumulate_scalar(std::span<float> dst, std::span<const float> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

void blend_scalar(std::span<float> dst, std::span<const float> a, std::span<const float> b, float wa, float wb) {
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const float pa = wa * a[i];
    const float pb = wb * b[i];
    dst[i] = pa + pb;
  }
}

double sum_scalar(std::span<const float> src) {
  double total = 0.0;
  for (float v : src) total += v;
  return total;
}

}  // namespace

const KernelTable& scalar() noexcept {
  static const KernelTable table{"scalar", fill_scalar, copy_scalar, accumulate_scalar, blend_scalar, sum_scalar};
  return table;
}

}  // namespace evz::kernels
