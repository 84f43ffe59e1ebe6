// evz: generate, augment, inspect and verify event-camera datasets.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "evz/codec.hpp"
#include "evz/config.hpp"
#include "evz/log.hpp"
#include "evz/pipeline.hpp"
#include "evz/raster.hpp"
#include "evz/synth.hpp"
#include "evz/verify.hpp"
#include "evz/viz.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsage = 2;
constexpr int kFailure = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Size {
  int height = 48;
  int width = 48;
};

Size parse_size(const std::string& text) {
  const auto x = text.find('x');
  Size s;
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    s.height = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    const std::string w = text.substr(x + 1);
    s.width = std::stoi(w, &used);
    if (used != w.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError(fmt::format("invalid size '{}', expected HxW", text));
  }
  if (s.height < 1 || s.width < 1 || s.height > 65535 || s.width > 65535) {
    throw UsageError(fmt::format("invalid size '{}'", text));
  }
  return s;
}

evz::Strategy parse_strategy_or_usage(const std::string& token) {
  const auto s = evz::parse_strategy(token);
  if (!s) throw UsageError(fmt::format("unknown strategy '{}'", token));
  return *s;
}

}  // namespace

int main(int argc, char** argv) {
  evz::init_logging();
  CLI::App app{"Progressive zoom augmentation for event-camera data"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic moving-shape dataset");
  std::size_t classes = 3, per_class = 10;
  std::string synth_size = "48x48";
  int synth_bins = 8, synth_workers = 1;
  std::uint32_t duration = 8000;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  synth->add_option("--classes", classes, "Number of classes (2 or 3)")->check(CLI::Range(2, 3));
  synth->add_option("--per-class", per_class, "Samples per class");
  synth->add_option("--size", synth_size, "Sensor geometry HxW");
  synth->add_option("--bins", synth_bins, "Time bins the motion is rendered over")->check(CLI::PositiveNumber);
  synth->add_option("--duration", duration, "Stream duration in microseconds");
  synth->add_option("--seed", synth_seed, "Master seed");
  synth->add_option("--workers", synth_workers, "Worker threads")->check(CLI::PositiveNumber);
  synth->add_option("--out", synth_out, "Output directory")->required();

  // rasterize
  auto* raster = app.add_subcommand("rasterize", "Convert an EVT1 stream into an EVZF tensor");
  int raster_bins = 8;
  std::string raster_size = "48x48", raster_in, raster_out;
  raster->add_option("--bins", raster_bins, "Time bins")->check(CLI::PositiveNumber);
  raster->add_option("--size", raster_size, "Target geometry HxW (downscales if smaller than the stream)");
  raster->add_option("input", raster_in, "Input .evt")->required();
  raster->add_option("output", raster_out, "Output .evzf")->required();

  // augment
  auto* augment = app.add_subcommand("augment", "Augment every sample of a dataset");
  std::string manifest_path, strategy_token = "eventzoom", anchor = "center", label_mode = "per_step";
  std::string augment_out, augment_size = "48x48", cache_dir;
  evz::AugConfig cfg;
  int workers = 1;
  augment->add_option("--manifest", manifest_path, "Input manifest")->required();
  augment->add_option("--strategy", strategy_token, "eventzoom|mixup|cutmix|eventmix|eventdrop|ablation:<NAME>");
  augment->add_option("--mixnum", cfg.mixnum, "Donors per sample (eventzoom)");
  augment->add_option("--lambda-min", cfg.lambda_min, "Lower scale bound");
  augment->add_option("--lambda-max", cfg.lambda_max, "Upper scale bound");
  augment->add_option("--anchor", anchor, "center|top_left")->check(CLI::IsMember({"center", "top_left"}));
  augment->add_option("--label-mode", label_mode, "per_step|averaged")->check(CLI::IsMember({"per_step", "averaged"}));
  augment->add_option("--bins", cfg.bins, "Time bins")->check(CLI::PositiveNumber);
  augment->add_option("--size", augment_size, "Frame geometry HxW");
  augment->add_option("--seed", cfg.master_seed, "Master seed");
  augment->add_option("--alpha", cfg.mixup_alpha, "Mixup Beta(alpha, alpha) parameter");
  augment->add_option("--drop-ratio", cfg.drop_ratio, "Eventdrop ratio");
  augment->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  augment->add_option("--cache", cache_dir, "Directory for rasterized donor tensors");
  augment->add_option("--out", augment_out, "Output directory")->required();

  // viz
  auto* viz = app.add_subcommand("viz", "Render an EVZF tensor as PGM images");
  std::string viz_in, viz_out, viz_format = "pgm", viz_compare;
  viz->add_option("input", viz_in, "Input .evzf")->required();
  viz->add_option("--out", viz_out, "Output directory")->required();
  viz->add_option("--format", viz_format, "Image format")->check(CLI::IsMember({"pgm"}));
  viz->add_option("--compare", viz_compare, "Second .evzf rendered below the first in a strip");

  // stats
  auto* stats = app.add_subcommand("stats", "Histogram of donor mixing weights");
  std::string stats_manifest;
  std::size_t stats_bins = 10;
  stats->add_option("--manifest", stats_manifest, "Augmented dataset manifest")->required();
  stats->add_option("--bins", stats_bins, "Histogram bins")->check(CLI::PositiveNumber);

  // bench
  auto* bench = app.add_subcommand("bench", "Time augmentation strategies");
  std::vector<std::string> bench_strategies;
  std::size_t iterations = 200;
  std::uint64_t bench_seed = 1;
  int bench_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bench->add_option("--strategy", bench_strategies, "Strategy token (repeatable; default: all baselines)");
  bench->add_option("--iterations", iterations, "Iterations per strategy");
  bench->add_option("--seed", bench_seed, "Seed for inputs and draws");
  bench->add_option("--workers", bench_workers, "Threads for the parallel pass")->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "Run the invariant and acceptance suite");
  std::string scratch;
  verify->add_option("--scratch", scratch, "Scratch directory (default: temporary)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*synth) {
      const Size s = parse_size(synth_size);
      const evz::Geometry g{synth_bins, s.height, s.width, duration};
      const auto m = evz::gen_dataset(classes, per_class, synth_out, synth_seed, g, synth_workers);
      fmt::print("wrote {} samples ({} classes) to {}\n", m.entries.size(), m.num_classes, synth_out);
    } else if (*raster) {
      const Size s = parse_size(raster_size);
      const evz::EventStream stream = evz::load_evt(raster_in);
      if (const auto v = evz::validate_stream(stream); !v.empty()) {
        throw evz::Error(fmt::format("{}: {}", raster_in, v.front().message));
      }
      evz::FrameTensor frames = evz::rasterize(stream, raster_bins, stream.height, stream.width);
      if (s.height != stream.height || s.width != stream.width) frames = evz::downscale_frames(frames, s.height, s.width);
      evz::write_file(raster_out, evz::write_evzf(frames));
    } else if (*augment) {
      cfg.strategy = parse_strategy_or_usage(strategy_token);
      cfg.anchor_mode = anchor == "center" ? evz::AnchorMode::Center : evz::AnchorMode::TopLeft;
      cfg.label_mode = label_mode == "per_step" ? evz::LabelMode::PerStep : evz::LabelMode::Averaged;
      const Size s = parse_size(augment_size);
      cfg.height = s.height;
      cfg.width = s.width;
      try {
        cfg.validate();
      } catch (const evz::Error& e) {
        throw UsageError(e.what());
      }
      const fs::path mpath(manifest_path);
      const auto manifest = evz::load_manifest(mpath);
      evz::AugmentOptions options{workers, std::nullopt};
      if (!cache_dir.empty()) options.cache_dir = fs::path(cache_dir);
      const auto report = evz::augment_dataset(manifest, mpath.parent_path(), cfg, augment_out, options);
      fmt::print("augmented {} of {} samples with {} into {}\n", report.output.entries.size(), report.samples.size(),
                 cfg.strategy.token(), augment_out);
      if (report.failures > 0) fmt::print(stderr, "{} samples failed; see errors.tsv\n", report.failures);
    } else if (*viz) {
      const auto file = evz::load_evzf(viz_in);
      const auto written = evz::write_frame_pgms(file.frames, viz_out);
      std::size_t count = written.size();
      if (!viz_compare.empty()) count += evz::write_compare_strips(file.frames, evz::load_evzf(viz_compare).frames, viz_out).size();
      fmt::print("wrote {} images to {}\n", count, viz_out);
    } else if (*stats) {
      const fs::path mpath(stats_manifest);
      const auto hist = evz::label_weight_histogram(evz::load_manifest(mpath), mpath.parent_path(), stats_bins);
      fmt::print("{}", evz::format_histogram(hist));
    } else if (*bench) {
      std::vector<evz::Strategy> strategies;
      if (bench_strategies.empty()) {
        for (const char* token : {"eventzoom", "mixup", "cutmix", "eventmix", "eventdrop"}) {
          strategies.push_back(*evz::parse_strategy(token));
        }
      }
      for (const auto& token : bench_strategies) strategies.push_back(parse_strategy_or_usage(token));
      fmt::print("{}", evz::format_bench(evz::run_bench(strategies, iterations, bench_seed, bench_workers)));
    } else if (*verify) {
      evz::verify::Options options;
      if (!scratch.empty()) options.scratch_dir = scratch;
      bool ok = true;
      for (const auto& r : evz::verify::run_all(options)) {
        fmt::print("{}\n", evz::verify::format_result(r));
        std::fflush(stdout);
        ok = ok && r.passed;
      }
      return ok ? 0 : kFailure;
    }
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kFailure;
  }
  return 0;
}
