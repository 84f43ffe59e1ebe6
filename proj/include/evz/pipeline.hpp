#pragma once

// Dataset-level augmentation.
//
// Sample i always draws from child_rng(master_seed, i), so the output of a
// run is a pure function of (inputs, config) whatever the worker count.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evz/codec.hpp"
#include "evz/config.hpp"
#include "evz/event.hpp"

namespace evz {

/// A manifest's samples loaded and rasterized to the config geometry. Entries
/// that failed to load carry an error message instead of frames.
struct LoadedDataset {
  std::size_t num_classes = 0;
  std::vector<std::size_t> classes;
  std::vector<std::string> paths;
  std::vector<std::optional<FrameTensor>> frames;
  std::vector<std::optional<EventStream>> events;  // only kept for event-level strategies
  std::vector<std::string> errors;

  std::size_t size() const noexcept { return classes.size(); }
};

/// Loads every entry relative to `root`. Event entries are validated and
/// rasterized (then downscaled if their geometry differs from the config).
/// With `cache_dir`, rasterized tensors are read from / written to it.
LoadedDataset load_dataset(const DatasetManifest& manifest, const std::filesystem::path& root, const AugConfig& cfg,
                           int workers = 1, const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

struct AugmentedSample {
  FrameTensor frames;
  SoftLabelTrack labels;
  std::vector<std::size_t> donors;
  std::size_t collisions = 0;  // donor self-collision re-draws
  std::uint64_t rng_draws = 0;
};

/// Augments sample `index` with the configured strategy. Throws Error when
/// the sample or one of its donors failed to load.
AugmentedSample augment_sample(const LoadedDataset& data, std::size_t index, const AugConfig& cfg);

struct SampleOutcome {
  std::size_t index = 0;
  bool ok = false;
  std::string error;
  std::vector<std::size_t> donors;
  std::size_t collisions = 0;
};

struct AugmentReport {
  DatasetManifest output;
  std::vector<SampleOutcome> samples;
  std::size_t failures = 0;
};

struct AugmentOptions {
  int workers = 1;
  std::optional<std::filesystem::path> cache_dir;
};

/// Writes sample_<i>.evzf (with label track) and manifest.txt to out_dir;
/// failed samples are listed in errors.tsv and skipped. Throws Error when every
/// sample fails.
AugmentReport augment_dataset(const DatasetManifest& manifest, const std::filesystem::path& root,
                              const AugConfig& cfg, const std::filesystem::path& out_dir,
                              const AugmentOptions& options = {});

struct Histogram {
  std::vector<std::size_t> counts;
  std::vector<double> cumulative;  // fraction of samples with weight < upper edge of bin
  std::size_t total = 0;
  double mean = 0.0;
};

Histogram histogram_of(std::span<const double> weights, std::size_t bins);

/// Donor mixing weight of each output sample: 1 - averaged[base class].
/// Throws Error("no label track") for outputs without labels.
std::vector<double> donor_weights(const DatasetManifest& output, const std::filesystem::path& root);

Histogram label_weight_histogram(const DatasetManifest& output, const std::filesystem::path& root, std::size_t bins);

/// Tab-separated: bin_lo, bin_hi, count, cumulative.
std::string format_histogram(const Histogram& h);

struct BenchRow {
  std::string strategy;
  std::string mode;  // "single" or "parallel[<workers>]"
  std::size_t iterations = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p99_ms = 0.0;
};

/// Times one augmentation per iteration on random 8x2x48x48 tensors
/// (eventzoom with mixnum 2). Rows are ordered by strategy, then mode.
std::vector<BenchRow> run_bench(std::span<const Strategy> strategies, std::size_t iterations, std::uint64_t seed,
                                int parallel_workers);

std::string format_bench(std::span<const BenchRow> rows);

}  // namespace evz
