#include "evz/baselines.hpp"

#include <cmath>
#include <random>

#include "evz/kernels.hpp"
#include "evz/raster.hpp"

namespace evz {
namespace {

void check_pair(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                std::span<const double> y_b) {
  if (!a.same_shape(b)) throw Error("shape mismatch");
  if (y_a.size() != y_b.size()) throw Error("class count mismatch");
}

Distribution weighted(std::span<const double> y_a, std::span<const double> y_b, double weight_b) {
  Distribution d(y_a.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = (1.0 - weight_b) * y_a[k] + weight_b * y_b[k];
  return d;
}

// Copies b's cells into a over the half-open column interval [x_lo, x_hi) of row y, every bin and channel.
void paste_rows(FrameTensor& out, const FrameTensor& b, int y, int x_lo, int x_hi) {
  if (x_hi <= x_lo) return;
  const auto& k = kernels::active();
  for (int t = 0; t < out.bins(); ++t) {
    const StepView dst = step_view(out, t);
    const ConstStepView src = step_view(b, t);
    for (int c = 0; c < out.channels(); ++c) {
      k.copy(dst.row(c, y).subspan(x_lo, x_hi - x_lo), src.row(c, y).subspan(x_lo, x_hi - x_lo));
    }
  }
}

Point2 draw_anchor(DeterministicRng& rng, const AugConfig& cfg) {
  Point2 p;
  p.x = rng.uniform(0.0, cfg.width);
  p.y = rng.uniform(0.0, cfg.height);
  return p;
}

}  // namespace

MixResult mixup_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                       std::span<const double> y_b, double weight) {
  check_pair(a, y_a, b, y_b);
  if (!(weight >= 0.0 && weight <= 1.0)) throw Error("mixing weight out of range");
  MixResult out{FrameTensor(a.bins(), a.channels(), a.height(), a.width()), {}};
  kernels::active().blend(out.frames.values(), a.values(), b.values(), static_cast<float>(weight),
                          static_cast<float>(1.0 - weight));
  out.labels = SoftLabelTrack::constant(weighted(y_b, y_a, weight), a.bins());
  return out;
}

double sample_beta(DeterministicRng& rng, double alpha) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  const double x = gamma(rng);
  const double y = gamma(rng);
  return x + y > 0.0 ? x / (x + y) : 0.5;
}

MixResult mixup_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                       std::span<const double> y_b, double alpha, DeterministicRng& rng) {
  return mixup_frames(a, y_a, b, y_b, sample_beta(rng, alpha));
}

MixResult cutmix_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                        std::span<const double> y_b, const Rect& rect) {
  check_pair(a, y_a, b, y_b);
  const Rect box = rect.clipped(a.width(), a.height());
  MixResult out{a, {}};
  for (int y = box.y0; y < box.y0 + box.h; ++y) paste_rows(out.frames, b, y, box.x0, box.x0 + box.w);
  const double weight = static_cast<double>(box.area()) / (static_cast<double>(a.height()) * a.width());
  out.labels = SoftLabelTrack::constant(weighted(y_a, y_b, weight), a.bins());
  return out;
}

Rect sample_cutmix_rect(DeterministicRng& rng, int height, int width) {
  const double ratio = std::sqrt(1.0 - rng.uniform01());
  const int cut_w = static_cast<int>(std::floor(width * ratio));
  const int cut_h = static_cast<int>(std::floor(height * ratio));
  const int cx = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(width)));
  const int cy = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(height)));
  return Rect{cx - cut_w / 2, cy - cut_h / 2, cut_w, cut_h}.clipped(width, height);
}

MixResult cutmix_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                        std::span<const double> y_b, DeterministicRng& rng) {
  check_pair(a, y_a, b, y_b);
  return cutmix_frames(a, y_a, b, y_b, sample_cutmix_rect(rng, a.height(), a.width()));
}

bool Ellipse::contains(int x, int y) const noexcept {
  const double dx = (x - cx) / sx;
  const double dy = (y - cy) / sy;
  return dx * dx + dy * dy <= 1.0;
}

Ellipse sample_eventmix_ellipse(DeterministicRng& rng, int height, int width) {
  Ellipse e;
  e.cx = rng.uniform(0.0, width);
  e.cy = rng.uniform(0.0, height);
  e.sx = rng.uniform(0.05, 0.5) * width;
  e.sy = rng.uniform(0.05, 0.5) * height;
  return e;
}

long long ellipse_area(const Ellipse& e, int height, int width) {
  long long n = 0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) n += e.contains(x, y) ? 1 : 0;
  }
  return n;
}

MixResult eventmix_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                          std::span<const double> y_b, const Ellipse& region) {
  check_pair(a, y_a, b, y_b);
  MixResult out{a, {}};
  long long area = 0;
  for (int y = 0; y < a.height(); ++y) {
    // Convex region: the row intersection is one interval.
    int x_lo = 0;
    while (x_lo < a.width() && !region.contains(x_lo, y)) ++x_lo;
    int x_hi = x_lo;
    while (x_hi < a.width() && region.contains(x_hi, y)) ++x_hi;
    paste_rows(out.frames, b, y, x_lo, x_hi);
    area += x_hi - x_lo;
  }
  const double weight = static_cast<double>(area) / (static_cast<double>(a.height()) * a.width());
  out.labels = SoftLabelTrack::constant(weighted(y_a, y_b, weight), a.bins());
  return out;
}

MixResult eventmix_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                          std::span<const double> y_b, DeterministicRng& rng) {
  check_pair(a, y_a, b, y_b);
  return eventmix_frames(a, y_a, b, y_b, sample_eventmix_ellipse(rng, a.height(), a.width()));
}

EventStream eventdrop(const EventStream& s, double drop_ratio, DeterministicRng& rng) {
  if (!(drop_ratio >= 0.0 && drop_ratio <= 1.0)) throw Error("drop ratio out of range");
  EventStream out{s.width, s.height, s.duration, {}};
  out.events.reserve(static_cast<std::size_t>(static_cast<double>(s.events.size()) * (1.0 - drop_ratio)) + 1);
  for (const Event& e : s.events) {
    if (rng.uniform01() >= drop_ratio) out.events.push_back(e);
  }
  return out;
}

StepSchedule draw_schedule(const AblationVariant& variant, const AugConfig& cfg, DeterministicRng& rng) {
  const int bins = cfg.bins;
  StepSchedule s;
  s.scale.resize(bins);
  s.anchor.resize(bins);

  ZoomParams p;
  switch (variant.scale_mode) {
    case ParamMode::Progressive:
      p.scale_start = rng.uniform(cfg.lambda_min, cfg.lambda_max);
      p.scale_end = rng.uniform(cfg.lambda_min, cfg.lambda_max);
      for (int t = 0; t < bins; ++t) s.scale[t] = interp_scale(p, t, bins);
      break;
    case ParamMode::RandomPerStep:
      for (int t = 0; t < bins; ++t) s.scale[t] = rng.uniform(cfg.lambda_min, cfg.lambda_max);
      break;
    case ParamMode::Fixed: {
      const double scale = rng.uniform(cfg.lambda_min, cfg.lambda_max);
      for (int t = 0; t < bins; ++t) s.scale[t] = scale;
      break;
    }
  }
  switch (variant.position_mode) {
    case ParamMode::Progressive:
      p.anchor_start = draw_anchor(rng, cfg);
      p.anchor_end = draw_anchor(rng, cfg);
      for (int t = 0; t < bins; ++t) s.anchor[t] = interp_pos(p, t, bins);
      break;
    case ParamMode::RandomPerStep:
      for (int t = 0; t < bins; ++t) s.anchor[t] = draw_anchor(rng, cfg);
      break;
    case ParamMode::Fixed: {
      const Point2 anchor = draw_anchor(rng, cfg);
      for (int t = 0; t < bins; ++t) s.anchor[t] = anchor;
      break;
    }
  }
  return s;
}

MixResult apply_ablation(const FrameTensor& base, std::span<const double> y_base, const FrameTensor& donor,
                         std::span<const double> y_donor, const AblationVariant& variant,
                         const StepSchedule& schedule, AnchorMode anchor_mode) {
  check_pair(base, y_base, donor, y_donor);
  if (schedule.scale.size() != static_cast<std::size_t>(base.bins()) ||
      schedule.anchor.size() != static_cast<std::size_t>(base.bins())) {
    throw Error("schedule length does not match bins");
  }
  MixResult out{base, SoftLabelTrack::constant(Distribution(y_base.begin(), y_base.end()), base.bins())};
  embed_donor(out.frames, out.labels, donor, y_donor, schedule, anchor_mode, variant.embed_mode);
  out.labels.recompute_average();
  return out;
}

MixResult ablation_augment(const FrameTensor& base, std::span<const double> y_base, const FrameTensor& donor,
                           std::span<const double> y_donor, const AblationVariant& variant, const AugConfig& cfg,
                           DeterministicRng& rng) {
  check_pair(base, y_base, donor, y_donor);
  if (base.bins() != cfg.bins) throw Error("shape mismatch");
  return apply_ablation(base, y_base, donor, y_donor, variant, draw_schedule(variant, cfg, rng), cfg.anchor_mode);
}

}  // namespace evz
