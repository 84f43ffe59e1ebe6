#pragma once

#include <cmath>
#include <span>

#include "evz/event.hpp"

namespace evz {

/// One time bin of a frame tensor: C x H x W, row-major.
struct StepView {
  std::span<float> data;
  int channels = 0;
  int height = 0;
  int width = 0;

  std::span<float> row(int c, int y) const noexcept {
    return data.subspan((static_cast<std::size_t>(c) * height + y) * width, width);
  }
};

struct ConstStepView {
  std::span<const float> data;
  int channels = 0;
  int height = 0;
  int width = 0;

  ConstStepView() = default;
  ConstStepView(std::span<const float> d, int c, int h, int w) noexcept : data(d), channels(c), height(h), width(w) {}
  ConstStepView(const StepView& v) noexcept : data(v.data), channels(v.channels), height(v.height), width(v.width) {}

  std::span<const float> row(int c, int y) const noexcept {
    return data.subspan((static_cast<std::size_t>(c) * height + y) * width, width);
  }
};

inline StepView step_view(FrameTensor& f, int t) noexcept {
  return {f.step(t), f.channels(), f.height(), f.width()};
}
inline ConstStepView step_view(const FrameTensor& f, int t) noexcept {
  return {f.step(t), f.channels(), f.height(), f.width()};
}

/// floor(v * scale). The single definition of the forward-splat coordinate map,
/// shared by the dense and the sparse (event) code paths.
inline int scaled_coord(int v, double scale) noexcept {
  return static_cast<int>(std::floor(static_cast<double>(v) * scale));
}

/// Time bin of an event: min(T - 1, floor(t * T / duration)).
inline int bin_of(std::uint32_t t, int bins, std::uint32_t duration) noexcept {
  const std::uint64_t b = static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(bins) / duration;
  return b >= static_cast<std::uint64_t>(bins) ? bins - 1 : static_cast<int>(b);
}

/// Counts events into T bins x 2 polarity channels. The stream geometry must
/// equal (width, height).
FrameTensor rasterize(const EventStream& s, int bins, int height, int width);

/// Adds every positive source cell (c, y, x) to canvas cell
/// (c, floor(y * scale) + oy, floor(x * scale) + ox); out-of-canvas targets are
/// dropped. Channel counts must match.
void splat(ConstStepView source, double scale, int ox, int oy, StepView canvas);

/// Bounding box of every possible splat destination, before clipping.
Rect splat_extent(int src_width, int src_height, double scale, int ox, int oy);

/// Uniform downscale via splat with scale = target / source. Rejects
/// non-uniform scale and upscaling.
FrameTensor downscale_frames(const FrameTensor& frames, int target_height, int target_width);

}  // namespace evz
