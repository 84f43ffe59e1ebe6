#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>
#include <numeric>

#include <fmt/format.h>

#include "evz/baselines.hpp"
#include "evz/parallel.hpp"
#include "evz/pipeline.hpp"
#include "evz/raster.hpp"
#include "evz/zoom.hpp"

namespace evz {
namespace {

constexpr int kBins = 8;
constexpr int kSide = 48;

FrameTensor random_frames(DeterministicRng& rng) {
  FrameTensor f(kBins, 2, kSide, kSide);
  for (float& v : f.values()) v = rng.uniform01() < 0.1 ? static_cast<float>(1 + rng.uniform_index(3)) : 0.0f;
  return f;
}

EventStream random_stream(DeterministicRng& rng, std::size_t count) {
  EventStream s{kSide, kSide, 8000, {}};
  s.events.resize(count);
  for (Event& e : s.events) {
    e.t = static_cast<std::uint32_t>(rng.uniform_index(s.duration));
    e.x = static_cast<std::uint16_t>(rng.uniform_index(kSide));
    e.y = static_cast<std::uint16_t>(rng.uniform_index(kSide));
    e.polarity = rng.uniform01() < 0.5 ? 1 : -1;
  }
  return sort_events(std::move(s));
}

struct Inputs {
  FrameTensor base;
  FrameTensor donor_a;
  FrameTensor donor_b;
  EventStream stream;
  Distribution y_base = one_hot(0, 10);
  Distribution y_donor_a = one_hot(1, 10);
  Distribution y_donor_b = one_hot(2, 10);
};

// One augmentation; the result is folded into a checksum so it is not optimised away.
double run_once(const Strategy& strategy, const Inputs& in, DeterministicRng& rng) {
  AugConfig cfg;
  cfg.mixnum = 2;
  switch (strategy.kind) {
    case StrategyKind::EventZoom: {
      const FrameDonor donors[2] = {{&in.donor_a, in.y_donor_a}, {&in.donor_b, in.y_donor_b}};
      return eventzoom_frames(in.base, in.y_base, donors, cfg, rng).labels.averaged[0];
    }
    case StrategyKind::Mixup:
      return mixup_frames(in.base, in.y_base, in.donor_a, in.y_donor_a, cfg.mixup_alpha, rng).labels.averaged[0];
    case StrategyKind::CutMix:
      return cutmix_frames(in.base, in.y_base, in.donor_a, in.y_donor_a, rng).labels.averaged[0];
    case StrategyKind::EventMix:
      return eventmix_frames(in.base, in.y_base, in.donor_a, in.y_donor_a, rng).labels.averaged[0];
    case StrategyKind::EventDrop:
      return rasterize(eventdrop(in.stream, cfg.drop_ratio, rng), kBins, kSide, kSide).at(0, 0, 0, 0);
    case StrategyKind::Ablation:
      return ablation_augment(in.base, in.y_base, in.donor_a, in.y_donor_a, strategy.variant, cfg, rng)
          .labels.averaged[0];
  }
  return 0.0;
}

BenchRow summarize(std::string strategy, std::string mode, std::vector<double> ms) {
  BenchRow row{std::move(strategy), std::move(mode), ms.size()};
  std::sort(ms.begin(), ms.end());
  row.mean_ms = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
  row.median_ms = ms.size() % 2 == 1 ? ms[ms.size() / 2] : 0.5 * (ms[ms.size() / 2 - 1] + ms[ms.size() / 2]);
  const auto p99 = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(ms.size()))) - 1;
  row.p99_ms = ms[std::min(p99, ms.size() - 1)];
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(std::span<const Strategy> strategies, std::size_t iterations, std::uint64_t seed,
                                int parallel_workers) {
  std::vector<BenchRow> rows;
  if (iterations == 0) return rows;

  DeterministicRng setup(seed);
  Inputs in{random_frames(setup), random_frames(setup), random_frames(setup), random_stream(setup, 20000)};

  using clock = std::chrono::steady_clock;
  volatile double sink = 0.0;
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const Strategy& strategy = strategies[s];
    std::vector<double> ms(iterations);
    for (std::size_t i = 0; i < iterations; ++i) {
      DeterministicRng rng = child_rng(seed, i);
      const auto t0 = clock::now();
      sink = sink + run_once(strategy, in, rng);
      ms[i] = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    }
    rows.push_back(summarize(strategy.token(), "single", ms));

    std::vector<double> par(iterations);
    parallel_for(iterations, parallel_workers, [&](std::size_t i) {
      DeterministicRng rng = child_rng(seed, i);
      const auto t0 = clock::now();
      const double r = run_once(strategy, in, rng);
      par[i] = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      if (r < -1.0) sink = r;
    });
    rows.push_back(summarize(strategy.token(), fmt::format("parallel[{}]", std::max(parallel_workers, 1)), par));
  }
  return rows;
}

std::string format_bench(std::span<const BenchRow> rows) {
  std::string out = "strategy\tmode\titerations\tmean_ms\tmedian_ms\tp99_ms\n";
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(out), "{}\t{}\t{}\t{:.4f}\t{:.4f}\t{:.4f}\n", r.strategy, r.mode, r.iterations,
                   r.mean_ms, r.median_ms, r.p99_ms);
  }
  return out;
}

}  // namespace evz
