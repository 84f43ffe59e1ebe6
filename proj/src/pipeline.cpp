#include "evz/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "evz/baselines.hpp"
#include "evz/parallel.hpp"
#include "evz/raster.hpp"
#include "evz/rng.hpp"
#include "evz/zoom.hpp"

namespace evz {
namespace fs = std::filesystem;

namespace {

std::string cache_name(const std::string& rel, const AugConfig& cfg) {
  std::string name;
  name.reserve(rel.size() + 24);
  for (char ch : rel) name += (ch == '/' || ch == '\\') ? '_' : ch;
  return fmt::format("{}.t{}_{}x{}.evzf", name, cfg.bins, cfg.height, cfg.width);
}

FrameTensor fit_geometry(FrameTensor frames, const AugConfig& cfg) {
  if (frames.bins() != cfg.bins) {
    throw Error(fmt::format("tensor has {} bins, config expects {}", frames.bins(), cfg.bins));
  }
  if (frames.channels() != cfg.channels) throw Error("shape mismatch");
  if (frames.height() == cfg.height && frames.width() == cfg.width) return frames;
  return downscale_frames(frames, cfg.height, cfg.width);
}

FrameTensor frames_from_events(const EventStream& s, const AugConfig& cfg) {
  if (s.width == cfg.width && s.height == cfg.height) return rasterize(s, cfg.bins, cfg.height, cfg.width);
  return downscale_frames(rasterize(s, cfg.bins, s.height, s.width), cfg.height, cfg.width);
}

const FrameTensor& frames_at(const LoadedDataset& data, std::size_t i) {
  if (!data.frames[i]) throw Error(fmt::format("sample {} unavailable: {}", i, data.errors[i]));
  return *data.frames[i];
}

}  // namespace

LoadedDataset load_dataset(const DatasetManifest& manifest, const fs::path& root, const AugConfig& cfg, int workers,
                           const std::optional<fs::path>& cache_dir) {
  cfg.validate();
  const std::size_t n = manifest.entries.size();
  LoadedDataset data;
  data.num_classes = manifest.num_classes;
  data.classes.resize(n);
  data.paths.resize(n);
  data.frames.resize(n);
  data.events.resize(n);
  data.errors.resize(n);
  const bool keep_events = cfg.strategy.kind == StrategyKind::EventDrop;
  if (cache_dir) fs::create_directories(*cache_dir);

  parallel_for(n, workers, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[i];
    data.classes[i] = entry.class_id;
    data.paths[i] = entry.path;
    try {
      const fs::path path = root / entry.path;
      std::optional<EventStream> stream;
      if (entry.kind == EntryKind::Events && keep_events) {
        stream = load_evt(path);
      }
      const fs::path cached = cache_dir ? *cache_dir / cache_name(entry.path, cfg) : fs::path{};
      if (cache_dir && fs::exists(cached)) {
        data.frames[i] = fit_geometry(load_evzf(cached).frames, cfg);
      } else if (entry.kind == EntryKind::Events) {
        if (!stream) stream = load_evt(path);
        if (const auto v = validate_stream(*stream); !v.empty()) {
          throw Error(fmt::format("{}: {}", path.string(), v.front().message));
        }
        data.frames[i] = frames_from_events(*stream, cfg);
        if (cache_dir) write_file(cached, write_evzf(*data.frames[i]));
      } else {
        data.frames[i] = fit_geometry(load_evzf(path).frames, cfg);
      }
      if (keep_events) data.events[i] = std::move(stream);
    } catch (const std::exception& e) {
      data.frames[i].reset();
      data.events[i].reset();
      data.errors[i] = e.what();
    }
  });
  return data;
}

AugmentedSample augment_sample(const LoadedDataset& data, std::size_t index, const AugConfig& cfg) {
  const std::size_t n = data.size();
  if (index >= n) throw Error("sample index out of range");
  DeterministicRng rng = child_rng(cfg.master_seed, index);
  const FrameTensor& base = frames_at(data, index);
  const Distribution y_base = one_hot(data.classes[index], data.num_classes);

  AugmentedSample out;
  auto donor_of = [&](std::size_t d) -> std::pair<const FrameTensor&, Distribution> {
    out.donors.push_back(d);
    return {frames_at(data, d), one_hot(data.classes[d], data.num_classes)};
  };

  switch (cfg.strategy.kind) {
    case StrategyKind::EventZoom: {
      if (cfg.mixnum > 0 && n < 2) throw Error("no donor available");
      std::vector<ZoomParams> params;
      std::vector<FrameDonor> donors;
      for (std::size_t slot = 0; slot < cfg.mixnum; ++slot) {
        const std::size_t before = out.collisions;
        params.push_back(sample_zoom_params(rng, cfg, n, index, &out.collisions));
        if (out.collisions != before) {
          spdlog::debug("sample {} slot {}: {} donor self-collision re-draw(s)", index, slot, out.collisions - before);
        }
        auto [frames, label] = donor_of(params.back().donor_index);
        donors.push_back(FrameDonor{&frames, std::move(label)});
      }
      FramesResult r = eventzoom_frames(base, y_base, donors, params, cfg.anchor_mode);
      out.frames = std::move(r.frames);
      out.labels = std::move(r.labels);
      break;
    }
    case StrategyKind::Mixup:
    case StrategyKind::CutMix:
    case StrategyKind::EventMix:
    case StrategyKind::Ablation: {
      auto [donor, y_donor] = donor_of(draw_donor_index(rng, n, index, &out.collisions));
      MixResult r;
      if (cfg.strategy.kind == StrategyKind::Mixup) {
        r = mixup_frames(base, y_base, donor, y_donor, cfg.mixup_alpha, rng);
      } else if (cfg.strategy.kind == StrategyKind::CutMix) {
        r = cutmix_frames(base, y_base, donor, y_donor, rng);
      } else if (cfg.strategy.kind == StrategyKind::EventMix) {
        r = eventmix_frames(base, y_base, donor, y_donor, rng);
      } else {
        r = ablation_augment(base, y_base, donor, y_donor, cfg.strategy.variant, cfg, rng);
      }
      out.frames = std::move(r.frames);
      out.labels = std::move(r.labels);
      break;
    }
    case StrategyKind::EventDrop: {
      if (!data.events[index]) throw Error(fmt::format("sample {}: eventdrop needs an event-stream entry", index));
      out.frames = frames_from_events(eventdrop(*data.events[index], cfg.drop_ratio, rng), cfg);
      out.labels = SoftLabelTrack::constant(y_base, cfg.bins);
      break;
    }
  }

  if (cfg.label_mode == LabelMode::Averaged) {
    for (auto& step : out.labels.per_step) step = out.labels.averaged;
  }
  out.rng_draws = rng.draws();
  return out;
}

AugmentReport augment_dataset(const DatasetManifest& manifest, const fs::path& root, const AugConfig& cfg,
                              const fs::path& out_dir, const AugmentOptions& options) {
  cfg.validate();
  const LoadedDataset data = load_dataset(manifest, root, cfg, options.workers, options.cache_dir);
  const std::size_t n = data.size();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(fmt::format("{}: {}", out_dir.string(), ec.message()));

  AugmentReport report;
  report.samples.resize(n);
  parallel_for(n, options.workers, [&](std::size_t i) {
    SampleOutcome& outcome = report.samples[i];
    outcome.index = i;
    try {
      AugmentedSample s = augment_sample(data, i, cfg);
      write_file(out_dir / fmt::format("sample_{:06}.evzf", i), write_evzf(s.frames, &s.labels));
      outcome.ok = true;
      outcome.donors = std::move(s.donors);
      outcome.collisions = s.collisions;
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
  });

  report.output.num_classes = manifest.num_classes;
  std::string errors;
  for (const SampleOutcome& s : report.samples) {
    if (s.ok) {
      report.output.entries.push_back(
          ManifestEntry{fmt::format("sample_{:06}.evzf", s.index), data.classes[s.index], EntryKind::Frames});
    } else {
      ++report.failures;
      spdlog::error("sample {} ({}): {}", s.index, data.paths[s.index], s.error);
      fmt::format_to(std::back_inserter(errors), "{}\t{}\t{}\n", s.index, data.paths[s.index], s.error);
    }
  }
  write_text_file(out_dir / "manifest.txt", write_manifest(report.output));
  if (!errors.empty()) write_text_file(out_dir / "errors.tsv", errors);
  if (n > 0 && report.failures == n) throw Error("all samples failed");
  spdlog::info("augmented {} of {} samples into {}", n - report.failures, n, out_dir.string());
  return report;
}

Histogram histogram_of(std::span<const double> weights, std::size_t bins) {
  if (bins == 0) throw Error("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  h.cumulative.assign(bins, 0.0);
  h.total = weights.size();
  double total = 0.0;
  for (double w : weights) {
    const double clamped = std::clamp(w, 0.0, 1.0);
    const auto b = std::min(bins - 1, static_cast<std::size_t>(clamped * static_cast<double>(bins)));
    ++h.counts[b];
    total += w;
  }
  std::size_t running = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    running += h.counts[b];
    h.cumulative[b] = h.total > 0 ? static_cast<double>(running) / static_cast<double>(h.total) : 0.0;
  }
  h.mean = h.total > 0 ? total / static_cast<double>(h.total) : 0.0;
  return h;
}

std::vector<double> donor_weights(const DatasetManifest& output, const fs::path& root) {
  std::vector<double> weights;
  weights.reserve(output.entries.size());
  for (const auto& entry : output.entries) {
    const FrameFile file = load_evzf(root / entry.path);
    if (!file.labels) throw Error(fmt::format("{}: no label track", (root / entry.path).string()));
    if (entry.class_id >= file.labels->averaged.size()) throw Error("class out of range");
    // f32 storage: a one-hot 1.0 reads back exactly, so unmixed samples give 0.
    weights.push_back(std::max(0.0, 1.0 - file.labels->averaged[entry.class_id]));
  }
  return weights;
}

Histogram label_weight_histogram(const DatasetManifest& output, const fs::path& root, std::size_t bins) {
  const std::vector<double> w = donor_weights(output, root);
  return histogram_of(w, bins);
}

std::string format_histogram(const Histogram& h) {
  std::string out = "bin_lo\tbin_hi\tcount\tcumulative\n";
  const double width = 1.0 / static_cast<double>(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    fmt::format_to(std::back_inserter(out), "{:.4f}\t{:.4f}\t{}\t{:.6f}\n", width * b, width * (b + 1), h.counts[b],
                   h.cumulative[b]);
  }
  fmt::format_to(std::back_inserter(out), "# samples={} mean_weight={:.6f}\n", h.total, h.mean);
  return out;
}

}  // namespace evz
