#pragma once

// Comparison augmentations and the spatial/temporal ablation variants.
//
// mixup, cutmix and eventmix operate on frame tensors with a region (or
// weight) held fixed over time; eventdrop thins an event stream. The ablation
// variants reuse the zoom embedding but swap how scale and position evolve
// per bin, or replace scaling with a same-coordinate crop.

#include <optional>
#include <span>

#include "evz/config.hpp"
#include "evz/event.hpp"
#include "evz/rng.hpp"
#include "evz/zoom.hpp"

namespace evz {

struct MixResult {
  FrameTensor frames;
  SoftLabelTrack labels;
};

/// out = w * a + (1 - w) * b at every bin; label w * y_a + (1 - w) * y_b.
MixResult mixup_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                       std::span<const double> y_b, double weight);

/// Weight drawn from Beta(alpha, alpha).
MixResult mixup_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                       std::span<const double> y_b, double alpha, DeterministicRng& rng);

/// Beta(alpha, alpha) via two gamma draws on the given engine.
double sample_beta(DeterministicRng& rng, double alpha);

/// Replaces `rect` (clipped) of a with b's same cells at every bin; label
/// weight = clipped area / (H * W).
MixResult cutmix_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                        std::span<const double> y_b, const Rect& rect);

/// Classic box: r = sqrt(1 - u), box (W r) x (H r) centred on a uniform pixel.
Rect sample_cutmix_rect(DeterministicRng& rng, int height, int width);

MixResult cutmix_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                        std::span<const double> y_b, DeterministicRng& rng);

/// Axis-aligned 1-sigma level set of a 2-D Gaussian.
struct Ellipse {
  double cx = 0.0;
  double cy = 0.0;
  double sx = 1.0;
  double sy = 1.0;

  bool contains(int x, int y) const noexcept;
};

Ellipse sample_eventmix_ellipse(DeterministicRng& rng, int height, int width);

/// Number of pixels of an H x W frame inside `e`.
long long ellipse_area(const Ellipse& e, int height, int width);

MixResult eventmix_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                          std::span<const double> y_b, const Ellipse& region);

MixResult eventmix_frames(const FrameTensor& a, std::span<const double> y_a, const FrameTensor& b,
                          std::span<const double> y_b, DeterministicRng& rng);

/// Keeps each event independently with probability 1 - drop_ratio.
EventStream eventdrop(const EventStream& s, double drop_ratio, DeterministicRng& rng);

/// Draws the per-bin scale and anchor for one donor: all scale draws, then
/// all position draws. Progressive consumes 2 draws per parameter, random
/// per-step T, fixed 1; each position draw is an (x, y) pair of uniforms.
StepSchedule draw_schedule(const AblationVariant& variant, const AugConfig& cfg, DeterministicRng& rng);

MixResult apply_ablation(const FrameTensor& base, std::span<const double> y_base, const FrameTensor& donor,
                         std::span<const double> y_donor, const AblationVariant& variant,
                         const StepSchedule& schedule, AnchorMode anchor_mode);

MixResult ablation_augment(const FrameTensor& base, std::span<const double> y_base, const FrameTensor& donor,
                           std::span<const double> y_donor, const AblationVariant& variant, const AugConfig& cfg,
                           DeterministicRng& rng);

}  // namespace evz
