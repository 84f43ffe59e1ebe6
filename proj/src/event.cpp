#include "evz/event.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "evz/kernels.hpp"

namespace evz {

std::vector<Violation> validate_stream(const EventStream& s) {
  std::vector<Violation> out;
  bool seen_x = false, seen_y = false, seen_p = false, seen_order = false, seen_t = false;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const Event& e = s.events[i];
    if (!seen_x && e.x >= s.width) {
      seen_x = true;
      out.push_back({ViolationKind::XOutOfBounds, i, fmt::format("x out of bounds at index {}", i)});
    }
    if (!seen_y && e.y >= s.height) {
      seen_y = true;
      out.push_back({ViolationKind::YOutOfBounds, i, fmt::format("y out of bounds at index {}", i)});
    }
    if (!seen_p && e.polarity != 1 && e.polarity != -1) {
      seen_p = true;
      out.push_back({ViolationKind::BadPolarity, i, fmt::format("bad polarity at index {}", i)});
    }
    if (!seen_order && i > 0 && e.t < s.events[i - 1].t) {
      seen_order = true;
      out.push_back({ViolationKind::Unsorted, i, fmt::format("unsorted at index {}", i)});
    }
    if (!seen_t && e.t >= s.duration) {
      seen_t = true;
      out.push_back({ViolationKind::TimeOutOfRange, i, fmt::format("timestamp beyond duration at index {}", i)});
    }
  }
  return out;
}

EventStream sort_events(EventStream s) {
  for (const Event& e : s.events) {
    if (e.x >= s.width || e.y >= s.height || (e.polarity != 1 && e.polarity != -1)) {
      throw Error("invalid event");
    }
  }
  std::stable_sort(s.events.begin(), s.events.end(),
                   [](const Event& a, const Event& b) { return a.t < b.t; });
  return s;
}

FrameTensor::FrameTensor(int bins, int channels, int height, int width)
    : bins_(bins), channels_(channels), height_(height), width_(width) {
  if (bins <= 0 || channels <= 0 || height <= 0 || width <= 0) {
    throw Error(fmt::format("invalid tensor shape {}x{}x{}x{}", bins, channels, height, width));
  }
  values_.assign(static_cast<std::size_t>(bins) * channels * height * width, 0.0f);
}

double FrameTensor::sum() const { return kernels::active().sum(values_); }

Distribution one_hot(std::size_t cls, std::size_t num_classes) {
  if (cls >= num_classes) throw Error("class out of range");
  Distribution d(num_classes, 0.0);
  d[cls] = 1.0;
  return d;
}

bool is_distribution(std::span<const double> d, double tol) {
  if (d.empty()) return false;
  double total = 0.0;
  for (double v : d) {
    if (!(v >= 0.0)) return false;
    total += v;
  }
  return std::abs(total - 1.0) <= tol;
}

SoftLabelTrack SoftLabelTrack::constant(const Distribution& label, int bins) {
  SoftLabelTrack track;
  track.num_classes = label.size();
  track.per_step.assign(static_cast<std::size_t>(bins), label);
  track.averaged = label;
  return track;
}

void SoftLabelTrack::recompute_average() {
  averaged.assign(num_classes, 0.0);
  if (per_step.empty()) return;
  for (const auto& step : per_step) {
    for (std::size_t k = 0; k < num_classes; ++k) averaged[k] += step[k];
  }
  const double inv = 1.0 / static_cast<double>(per_step.size());
  for (double& v : averaged) v *= inv;
}

Rect Rect::clipped(int width, int height) const noexcept {
  const int lx = std::max(x0, 0);
  const int ly = std::max(y0, 0);
  const int hx = std::min(x0 + w, width);
  const int hy = std::min(y0 + h, height);
  if (hx <= lx || hy <= ly) return Rect{std::clamp(lx, 0, width), std::clamp(ly, 0, height), 0, 0};
  return Rect{lx, ly, hx - lx, hy - ly};
}

}  // namespace evz
