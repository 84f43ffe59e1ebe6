// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>

#include "evz/kernels.hpp"

namespace evz::kernels::detail {
namespace {

void fill_avx2(std::span<float> dst, float value) {
  const __m256 v = _mm256_set1_ps(value);
  float* d = dst.data();
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(d + i, v);
  for (; i < n; ++i) d[i] = value;
}

void copy_avx2(std::span<float> dst, std::span<const float> src) {
  float* d = dst.data();
  const float* s = src.data();
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(d + i, _mm256_loadu_ps(s + i));
  for (; i < n; ++i) d[i] = s[i];
}

void accumulate_avx2(std::span<float> dst, std::span<const float> src) {
  float* d = dst.data();
  const float* s = src.data();
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(d + i, _mm256_add_ps(_mm256_loadu_ps(d + i), _mm256_loadu_ps(s + i)));
  }
  for (; i < n; ++i) d[i] += s[i];
}

void blend_avx2(std::span<float> dst, std::span<const float> a, std::span<const float> b, float wa, float wb) {
  const __m256 va = _mm256_set1_ps(wa);
  const __m256 vb = _mm256_set1_ps(wb);
  float* d = dst.data();
  const float* pa = a.data();
  const float* pb = b.data();
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 x = _mm256_mul_ps(va, _mm256_loadu_ps(pa + i));
    const __m256 y = _mm256_mul_ps(vb, _mm256_loadu_ps(pb + i));
    _mm256_storeu_ps(d + i, _mm256_add_ps(x, y));
  }
  for (; i < n; ++i) {
    const float x = wa * pa[i];
    const float y = wb * pb[i];
    d[i] = x + y;
  }
}

double sum_avx2(std::span<const float> src) {
  const float* s = src.data();
  const std::size_t n = src.size();
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(s + i);
    lo = _mm256_add_pd(lo, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
    hi = _mm256_add_pd(hi, _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(lo, hi));
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) total += s[i];
  return total;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{"avx2", fill_avx2, copy_avx2, accumulate_avx2, blend_avx2, sum_avx2};
  return table;
}

}  // namespace evz::kernels::detail
