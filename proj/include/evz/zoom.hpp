#pragma once

// Progressive zoom-and-embed augmentation.
//
// Each donor follows a linear trajectory in scale and position across the T
// time bins. At bin t the donor frame is forward-splatted at scale lambda_t
// into a rectangular mask whose base content has been cleared, and the soft
// label moves toward the donor's label by the mask's frame coverage a_t:
//
//   y_t <- (1 - a_t) * y_t + a_t * y_donor,   a_t = |mask_t| / (H * W)
//
// Donors are embedded one after another into the running result.

#include <cstddef>
#include <span>
#include <vector>

#include "evz/config.hpp"
#include "evz/event.hpp"
#include "evz/raster.hpp"
#include "evz/rng.hpp"

namespace evz {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct ZoomParams {
  std::size_t donor_index = 0;
  double scale_start = 1.0;
  double scale_end = 1.0;
  Point2 anchor_start{};
  Point2 anchor_end{};

  friend bool operator==(const ZoomParams&, const ZoomParams&) = default;
};

/// Uniform index in [0, dataset_size) other than `exclude`, re-drawn on
/// collision. Each re-draw increments *collisions when given.
std::size_t draw_donor_index(DeterministicRng& rng, std::size_t dataset_size, std::size_t exclude,
                             std::size_t* collisions = nullptr);

/// Draws, in order: donor index (uniform over [0, dataset_size) minus
/// `exclude`, re-drawn on collision), scale_start, scale_end, anchor_start
/// (x then y), anchor_end (x then y).
ZoomParams sample_zoom_params(DeterministicRng& rng, const AugConfig& cfg, std::size_t dataset_size,
                              std::size_t exclude, std::size_t* collisions = nullptr);

/// The trajectory part of sample_zoom_params alone (six uniforms); donor_index is 0.
ZoomParams sample_trajectory(DeterministicRng& rng, const AugConfig& cfg);

/// t / (T - 1), or 0 when T == 1.
double step_fraction(int t, int bins) noexcept;

double interp_scale(const ZoomParams& p, int t, int bins) noexcept;
Point2 interp_pos(const ZoomParams& p, int t, int bins) noexcept;

/// Where a donor of size src_width x src_height lands at one bin.
struct Placement {
  int ox = 0;
  int oy = 0;
  Rect extent;  // unclipped
  Rect mask;    // clipped to the frame
  double coverage = 0.0;
};

Placement place_donor(int src_width, int src_height, int width, int height, double scale, Point2 anchor,
                      AnchorMode mode);

struct EmbedResult {
  Rect mask;
  double coverage = 0.0;
};

/// Clears the mask in every channel of `canvas`, then splats `donor` into it.
EmbedResult embed_step_inplace(StepView canvas, ConstStepView donor, double scale, Point2 anchor, AnchorMode mode);

struct EmbedStepOutput {
  std::vector<float> mixed;  // C x H x W
  Rect mask;
  double coverage = 0.0;
};

EmbedStepOutput embed_step(ConstStepView base, ConstStepView donor, double scale, Point2 anchor, AnchorMode mode);

/// Clears the mask of `canvas` and copies the donor's same-coordinate cells
/// into it; the donor is not scaled. The mask is the one embed_step would use.
EmbedResult crop_step_inplace(StepView canvas, ConstStepView donor, double scale, Point2 anchor, AnchorMode mode);

/// (1 - a) * prev + a * donor. Throws Error("coverage out of range") unless 0 <= a <= 1.
Distribution mix_label_step(std::span<const double> prev, std::span<const double> donor, double coverage);

/// Per-bin scale and anchor for one donor.
struct StepSchedule {
  std::vector<double> scale;
  std::vector<Point2> anchor;
};

StepSchedule progressive_schedule(const ZoomParams& p, int bins);

/// Embeds one donor into `canvas` following `schedule`, updating the per-step
/// labels of `track` (its average is left stale). Returns per-bin coverage.
std::vector<double> embed_donor(FrameTensor& canvas, SoftLabelTrack& track, const FrameTensor& donor,
                                std::span<const double> donor_label, const StepSchedule& schedule,
                                AnchorMode anchor_mode, EmbedMode embed_mode = EmbedMode::ZoomSplat);

struct FrameDonor {
  const FrameTensor* frames = nullptr;
  Distribution label;
};

struct EventDonor {
  const EventStream* stream = nullptr;
  Distribution label;
};

struct FramesResult {
  FrameTensor frames;
  SoftLabelTrack labels;
  std::vector<std::vector<double>> coverage;  // [donor][bin]
};

struct EventsResult {
  EventStream stream;
  SoftLabelTrack labels;
  std::vector<std::vector<double>> coverage;
};

/// Draws one trajectory per donor (sample_trajectory) and embeds the donors in
/// order. Requires donors.size() == cfg.mixnum.
FramesResult eventzoom_frames(const FrameTensor& base, std::span<const double> base_label,
                              std::span<const FrameDonor> donors, const AugConfig& cfg, DeterministicRng& rng);

/// Same, with the trajectories supplied; params[i] drives donors[i].
FramesResult eventzoom_frames(const FrameTensor& base, std::span<const double> base_label,
                              std::span<const FrameDonor> donors, std::span<const ZoomParams> params,
                              AnchorMode anchor_mode);

/// Sparse-domain counterpart: bins follow rasterize's binning with cfg.bins.
/// rasterize(result.stream) equals eventzoom_frames on rasterized inputs.
EventsResult eventzoom_events(const EventStream& base, std::span<const double> base_label,
                              std::span<const EventDonor> donors, const AugConfig& cfg, DeterministicRng& rng);

EventsResult eventzoom_events(const EventStream& base, std::span<const double> base_label,
                              std::span<const EventDonor> donors, std::span<const ZoomParams> params, int bins,
                              AnchorMode anchor_mode);

}  // namespace evz
