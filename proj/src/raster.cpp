#include "evz/raster.hpp"

#include <vector>

#include <fmt/format.h>

#include "evz/kernels.hpp"

namespace evz {

FrameTensor rasterize(const EventStream& s, int bins, int height, int width) {
  if (bins < 1) throw Error("bins must be positive");
  if (s.width != width || s.height != height) {
    throw Error(fmt::format("stream geometry {}x{} does not match target {}x{}", s.height, s.width, height, width));
  }
  if (s.duration == 0 && !s.events.empty()) throw Error("zero-duration stream");
  FrameTensor out(bins, 2, height, width);
  for (const Event& e : s.events) {
    if (e.x >= s.width || e.y >= s.height || (e.polarity != 1 && e.polarity != -1)) throw Error("invalid event");
    out.at(bin_of(e.t, bins, s.duration), polarity_channel(e.polarity), e.y, e.x) += 1.0f;
  }
  return out;
}

void splat(ConstStepView source, double scale, int ox, int oy, StepView canvas) {
  if (!(scale > 0.0)) throw Error("scale must be positive");
  if (source.channels != canvas.channels) throw Error("shape mismatch");

  if (scale == 1.0) {
    // Collision-free: each source row lands on one canvas row segment.
    const int x_lo = std::max(0, -ox);
    const int x_hi = std::min(source.width, canvas.width - ox);
    if (x_hi <= x_lo) return;
    const auto& k = kernels::active();
    for (int c = 0; c < source.channels; ++c) {
      for (int y = 0; y < source.height; ++y) {
        const int dy = y + oy;
        if (dy < 0 || dy >= canvas.height) continue;
        k.accumulate(canvas.row(c, dy).subspan(x_lo + ox, x_hi - x_lo),
                     source.row(c, y).subspan(x_lo, x_hi - x_lo));
      }
    }
    return;
  }

  std::vector<int> dest_x(source.width);
  for (int x = 0; x < source.width; ++x) dest_x[x] = scaled_coord(x, scale) + ox;
  for (int y = 0; y < source.height; ++y) {
    const int dy = scaled_coord(y, scale) + oy;
    if (dy < 0 || dy >= canvas.height) continue;
    for (int c = 0; c < source.channels; ++c) {
      const auto src = source.row(c, y);
      const auto dst = canvas.row(c, dy);
      for (int x = 0; x < source.width; ++x) {
        const float v = src[x];
        const int dx = dest_x[x];
        if (v > 0.0f && dx >= 0 && dx < canvas.width) dst[dx] += v;
      }
    }
  }
}

Rect splat_extent(int src_width, int src_height, double scale, int ox, int oy) {
  return Rect{ox, oy, scaled_coord(src_width - 1, scale) + 1, scaled_coord(src_height - 1, scale) + 1};
}

FrameTensor downscale_frames(const FrameTensor& frames, int target_height, int target_width) {
  if (target_height > frames.height() || target_width > frames.width() || target_height < 1 || target_width < 1) {
    throw Error("target must not exceed source dimensions");
  }
  if (static_cast<long long>(frames.width()) * target_height != static_cast<long long>(frames.height()) * target_width) {
    throw Error("non-uniform scale unsupported");
  }
  if (target_height == frames.height()) return frames;
  const double scale = static_cast<double>(target_width) / frames.width();
  FrameTensor out(frames.bins(), frames.channels(), target_height, target_width);
  for (int t = 0; t < frames.bins(); ++t) splat(step_view(frames, t), scale, 0, 0, step_view(out, t));
  return out;
}

}  // namespace evz
