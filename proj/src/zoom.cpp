#include "evz/zoom.hpp"

#include <algorithm>
#include <cmath>

#include "evz/kernels.hpp"

namespace evz {
namespace {

void check_label_width(std::span<const double> base_label, std::span<const double> donor_label) {
  if (donor_label.size() != base_label.size()) throw Error("class count mismatch");
}

void clear_rect(StepView canvas, const Rect& mask) {
  if (mask.w == 0 || mask.h == 0) return;
  const auto& k = kernels::active();
  for (int c = 0; c < canvas.channels; ++c) {
    for (int y = mask.y0; y < mask.y0 + mask.h; ++y) k.fill(canvas.row(c, y).subspan(mask.x0, mask.w), 0.0f);
  }
}

void finish(SoftLabelTrack& track) { track.recompute_average(); }

}  // namespace

ZoomParams sample_trajectory(DeterministicRng& rng, const AugConfig& cfg) {
  ZoomParams p;
  p.scale_start = rng.uniform(cfg.lambda_min, cfg.lambda_max);
  p.scale_end = rng.uniform(cfg.lambda_min, cfg.lambda_max);
  p.anchor_start.x = rng.uniform(0.0, cfg.width);
  p.anchor_start.y = rng.uniform(0.0, cfg.height);
  p.anchor_end.x = rng.uniform(0.0, cfg.width);
  p.anchor_end.y = rng.uniform(0.0, cfg.height);
  return p;
}

std::size_t draw_donor_index(DeterministicRng& rng, std::size_t dataset_size, std::size_t exclude,
                             std::size_t* collisions) {
  if (dataset_size < 2) throw Error("no donor available");
  std::size_t donor = rng.uniform_index(dataset_size);
  while (donor == exclude) {
    if (collisions != nullptr) ++*collisions;
    donor = rng.uniform_index(dataset_size);
  }
  return donor;
}

ZoomParams sample_zoom_params(DeterministicRng& rng, const AugConfig& cfg, std::size_t dataset_size,
                              std::size_t exclude, std::size_t* collisions) {
  const std::size_t donor = draw_donor_index(rng, dataset_size, exclude, collisions);
  ZoomParams p = sample_trajectory(rng, cfg);
  p.donor_index = donor;
  return p;
}

double step_fraction(int t, int bins) noexcept {
  return bins > 1 ? static_cast<double>(t) / static_cast<double>(bins - 1) : 0.0;
}

double interp_scale(const ZoomParams& p, int t, int bins) noexcept {
  const double f = step_fraction(t, bins);
  return (1.0 - f) * p.scale_start + f * p.scale_end;
}

Point2 interp_pos(const ZoomParams& p, int t, int bins) noexcept {
  const double f = step_fraction(t, bins);
  return {(1.0 - f) * p.anchor_start.x + f * p.anchor_end.x, (1.0 - f) * p.anchor_start.y + f * p.anchor_end.y};
}

Placement place_donor(int src_width, int src_height, int width, int height, double scale, Point2 anchor,
                      AnchorMode mode) {
  Placement p;
  const Rect size = splat_extent(src_width, src_height, scale, 0, 0);
  const int ax = static_cast<int>(std::lround(anchor.x));
  const int ay = static_cast<int>(std::lround(anchor.y));
  if (mode == AnchorMode::Center) {
    p.ox = ax - size.w / 2;
    p.oy = ay - size.h / 2;
  } else {
    p.ox = ax;
    p.oy = ay;
  }
  p.extent = Rect{p.ox, p.oy, size.w, size.h};
  p.mask = p.extent.clipped(width, height);
  p.coverage = static_cast<double>(p.mask.area()) / (static_cast<double>(width) * height);
  return p;
}

EmbedResult embed_step_inplace(StepView canvas, ConstStepView donor, double scale, Point2 anchor, AnchorMode mode) {
  if (!(scale > 0.0)) throw Error("scale must be positive");
  const Placement p = place_donor(donor.width, donor.height, canvas.width, canvas.height, scale, anchor, mode);
  clear_rect(canvas, p.mask);
  splat(donor, scale, p.ox, p.oy, canvas);
  return {p.mask, p.coverage};
}

EmbedStepOutput embed_step(ConstStepView base, ConstStepView donor, double scale, Point2 anchor, AnchorMode mode) {
  if (base.channels != donor.channels || base.height != donor.height || base.width != donor.width) {
    throw Error("shape mismatch");
  }
  EmbedStepOutput out;
  out.mixed.assign(base.data.begin(), base.data.end());
  const auto r = embed_step_inplace({out.mixed, base.channels, base.height, base.width}, donor, scale, anchor, mode);
  out.mask = r.mask;
  out.coverage = r.coverage;
  return out;
}

EmbedResult crop_step_inplace(StepView canvas, ConstStepView donor, double scale, Point2 anchor, AnchorMode mode) {
  if (!(scale > 0.0)) throw Error("scale must be positive");
  const Placement p = place_donor(donor.width, donor.height, canvas.width, canvas.height, scale, anchor, mode);
  if (p.mask.w > 0 && p.mask.h > 0) {
    const auto& k = kernels::active();
    for (int c = 0; c < canvas.channels; ++c) {
      for (int y = p.mask.y0; y < p.mask.y0 + p.mask.h; ++y) {
        k.copy(canvas.row(c, y).subspan(p.mask.x0, p.mask.w), donor.row(c, y).subspan(p.mask.x0, p.mask.w));
      }
    }
  }
  return {p.mask, p.coverage};
}

Distribution mix_label_step(std::span<const double> prev, std::span<const double> donor, double coverage) {
  if (!(coverage >= 0.0 && coverage <= 1.0)) throw Error("coverage out of range");
  if (prev.size() != donor.size()) throw Error("class count mismatch");
  Distribution out(prev.size());
  for (std::size_t k = 0; k < prev.size(); ++k) out[k] = (1.0 - coverage) * prev[k] + coverage * donor[k];
  return out;
}

StepSchedule progressive_schedule(const ZoomParams& p, int bins) {
  StepSchedule s;
  s.scale.resize(bins);
  s.anchor.resize(bins);
  for (int t = 0; t < bins; ++t) {
    s.scale[t] = interp_scale(p, t, bins);
    s.anchor[t] = interp_pos(p, t, bins);
  }
  return s;
}

std::vector<double> embed_donor(FrameTensor& canvas, SoftLabelTrack& track, const FrameTensor& donor,
                                std::span<const double> donor_label, const StepSchedule& schedule,
                                AnchorMode anchor_mode, EmbedMode embed_mode) {
  if (!canvas.same_shape(donor)) throw Error("shape mismatch");
  if (donor_label.size() != track.num_classes) throw Error("class count mismatch");
  const int bins = canvas.bins();
  std::vector<double> coverage(bins);
  for (int t = 0; t < bins; ++t) {
    const EmbedResult r =
        embed_mode == EmbedMode::ZoomSplat
            ? embed_step_inplace(step_view(canvas, t), step_view(donor, t), schedule.scale[t], schedule.anchor[t],
                                 anchor_mode)
            : crop_step_inplace(step_view(canvas, t), step_view(donor, t), schedule.scale[t], schedule.anchor[t],
                                anchor_mode);
    coverage[t] = r.coverage;
    track.per_step[t] = mix_label_step(track.per_step[t], donor_label, r.coverage);
  }
  return coverage;
}

FramesResult eventzoom_frames(const FrameTensor& base, std::span<const double> base_label,
                              std::span<const FrameDonor> donors, const AugConfig& cfg, DeterministicRng& rng) {
  if (donors.size() != cfg.mixnum) throw Error("donor count mismatch");
  std::vector<ZoomParams> params;
  params.reserve(donors.size());
  for (std::size_t i = 0; i < donors.size(); ++i) params.push_back(sample_trajectory(rng, cfg));
  return eventzoom_frames(base, base_label, donors, params, cfg.anchor_mode);
}

FramesResult eventzoom_frames(const FrameTensor& base, std::span<const double> base_label,
                              std::span<const FrameDonor> donors, std::span<const ZoomParams> params,
                              AnchorMode anchor_mode) {
  if (params.size() != donors.size()) throw Error("donor count mismatch");
  for (const auto& d : donors) {
    if (d.frames == nullptr || !d.frames->same_shape(base)) throw Error("shape mismatch");
    check_label_width(base_label, d.label);
  }
  const Distribution y0(base_label.begin(), base_label.end());
  FramesResult out{base, SoftLabelTrack::constant(y0, base.bins()), {}};
  for (std::size_t i = 0; i < donors.size(); ++i) {
    out.coverage.push_back(embed_donor(out.frames, out.labels, *donors[i].frames, donors[i].label,
                                       progressive_schedule(params[i], base.bins()), anchor_mode));
  }
  finish(out.labels);
  return out;
}

EventsResult eventzoom_events(const EventStream& base, std::span<const double> base_label,
                              std::span<const EventDonor> donors, const AugConfig& cfg, DeterministicRng& rng) {
  if (donors.size() != cfg.mixnum) throw Error("donor count mismatch");
  std::vector<ZoomParams> params;
  params.reserve(donors.size());
  for (std::size_t i = 0; i < donors.size(); ++i) params.push_back(sample_trajectory(rng, cfg));
  return eventzoom_events(base, base_label, donors, params, cfg.bins, cfg.anchor_mode);
}

EventsResult eventzoom_events(const EventStream& base, std::span<const double> base_label,
                              std::span<const EventDonor> donors, std::span<const ZoomParams> params, int bins,
                              AnchorMode anchor_mode) {
  if (params.size() != donors.size()) throw Error("donor count mismatch");
  if (bins < 1) throw Error("bins must be positive");
  for (const auto& d : donors) {
    if (d.stream == nullptr || d.stream->width != base.width || d.stream->height != base.height ||
        d.stream->duration != base.duration) {
      throw Error("shape mismatch");
    }
    check_label_width(base_label, d.label);
  }
  if (base.duration == 0 && !base.events.empty()) throw Error("zero-duration stream");

  const int width = base.width;
  const int height = base.height;
  const Distribution y0(base_label.begin(), base_label.end());
  EventsResult out{base, SoftLabelTrack::constant(y0, bins), {}};
  std::vector<Event>& events = out.stream.events;

  std::vector<Placement> placement(bins);
  std::vector<double> scale(bins);
  for (std::size_t i = 0; i < donors.size(); ++i) {
    const StepSchedule schedule = progressive_schedule(params[i], bins);
    std::vector<double> coverage(bins);
    for (int b = 0; b < bins; ++b) {
      scale[b] = schedule.scale[b];
      placement[b] = place_donor(width, height, width, height, scale[b], schedule.anchor[b], anchor_mode);
      coverage[b] = placement[b].coverage;
      out.labels.per_step[b] = mix_label_step(out.labels.per_step[b], donors[i].label, coverage[b]);
    }

    std::erase_if(events, [&](const Event& e) {
      return placement[bin_of(e.t, bins, base.duration)].mask.contains(e.x, e.y);
    });
    for (const Event& e : donors[i].stream->events) {
      const int b = bin_of(e.t, bins, base.duration);
      const int nx = scaled_coord(e.x, scale[b]) + placement[b].ox;
      const int ny = scaled_coord(e.y, scale[b]) + placement[b].oy;
      if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
      events.push_back(Event{e.t, static_cast<std::uint16_t>(nx), static_cast<std::uint16_t>(ny), e.polarity});
    }
    out.coverage.push_back(std::move(coverage));
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
  finish(out.labels);
  return out;
}

}  // namespace evz
