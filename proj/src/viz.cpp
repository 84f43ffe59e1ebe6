#include "evz/viz.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

#include "evz/codec.hpp"

namespace evz {

std::string plane_to_pgm(std::span<const float> plane, int height, int width) {
  if (plane.size() != static_cast<std::size_t>(height) * width) throw Error("plane size mismatch");
  std::string out = fmt::format("P2\n{} {}\n255\n", width, height);
  const auto [lo_it, hi_it] = std::minmax_element(plane.begin(), plane.end());
  const float lo = plane.empty() ? 0.0f : *lo_it;
  const float hi = plane.empty() ? 0.0f : *hi_it;
  const double range = static_cast<double>(hi) - lo;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const float v = plane[static_cast<std::size_t>(y) * width + x];
      const int level = range > 0.0 ? static_cast<int>(std::lround((v - lo) / range * 255.0)) : 0;
      fmt::format_to(std::back_inserter(out), "{}{}", x == 0 ? "" : " ", level);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::filesystem::path> write_frame_pgms(const FrameTensor& frames, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  const std::size_t plane = frames.plane_size();
  for (int t = 0; t < frames.bins(); ++t) {
    for (int c = 0; c < frames.channels(); ++c) {
      const auto path = out_dir / fmt::format("t{}_c{}.pgm", t, c);
      write_text_file(path, plane_to_pgm(frames.step(t).subspan(c * plane, plane), frames.height(), frames.width()));
      written.push_back(path);
    }
  }
  return written;
}

std::vector<std::filesystem::path> write_compare_strips(const FrameTensor& top, const FrameTensor& bottom,
                                                        const std::filesystem::path& out_dir) {
  if (!top.same_shape(bottom)) throw Error("shape mismatch");
  std::filesystem::create_directories(out_dir);
  const int height = top.height();
  const int width = top.width();
  const int strip_w = width * top.bins();
  std::vector<std::filesystem::path> written;
  for (int c = 0; c < top.channels(); ++c) {
    std::vector<float> strip(static_cast<std::size_t>(2 * height) * strip_w, 0.0f);
    for (int row = 0; row < 2; ++row) {
      const FrameTensor& src = row == 0 ? top : bottom;
      for (int t = 0; t < src.bins(); ++t) {
        for (int y = 0; y < height; ++y) {
          for (int x = 0; x < width; ++x) {
            strip[static_cast<std::size_t>(row * height + y) * strip_w + t * width + x] = src.at(t, c, y, x);
          }
        }
      }
    }
    const auto path = out_dir / fmt::format("strip_c{}.pgm", c);
    write_text_file(path, plane_to_pgm(strip, 2 * height, strip_w));
    written.push_back(path);
  }
  return written;
}

}  // namespace evz
