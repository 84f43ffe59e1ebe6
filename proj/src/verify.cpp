#include "evz/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <unistd.h>

#include <fmt/format.h>

#include "evz/baselines.hpp"
#include "evz/codec.hpp"
#include "evz/kernels.hpp"
#include "evz/pipeline.hpp"
#include "evz/raster.hpp"
#include "evz/rng.hpp"
#include "evz/synth.hpp"

namespace evz::verify {
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

CheckResult timed(std::string name, double limit_seconds, bool acceptance,
                  const std::function<bool(std::string&)>& body) {
  CheckResult r;
  r.name = std::move(name);
  r.acceptance = acceptance;
  r.limit_seconds = limit_seconds;
  const auto t0 = Clock::now();
  try {
    r.passed = body(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = fmt::format("exception: {}", e.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_seconds > 0.0 && r.seconds >= limit_seconds) {
    r.passed = false;
    r.detail += fmt::format(" [over time budget {:.0f} s]", limit_seconds);
  }
  return r;
}

FrameTensor random_frames(DeterministicRng& rng, int bins, int height, int width, double density = 0.15) {
  FrameTensor f(bins, 2, height, width);
  for (float& v : f.values()) v = rng.uniform01() < density ? static_cast<float>(1 + rng.uniform_index(4)) : 0.0f;
  return f;
}

bool bit_equal(std::span<const float> a, std::span<const float> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

bool bit_equal(const FrameTensor& a, const FrameTensor& b) { return a.same_shape(b) && bit_equal(a.values(), b.values()); }

bool track_ok(const SoftLabelTrack& track) {
  for (const auto& step : track.per_step) {
    if (!is_distribution(step, 1e-9)) return false;
  }
  return is_distribution(track.averaged, 1e-9);
}

EventStream random_stream(DeterministicRng& rng, int height, int width, std::uint32_t duration, std::size_t count) {
  EventStream s{static_cast<std::uint16_t>(width), static_cast<std::uint16_t>(height), duration, {}};
  s.events.resize(count);
  for (Event& e : s.events) {
    e.t = static_cast<std::uint32_t>(rng.uniform_index(duration));
    e.x = static_cast<std::uint16_t>(rng.uniform_index(width));
    e.y = static_cast<std::uint16_t>(rng.uniform_index(height));
    e.polarity = rng.uniform01() < 0.5 ? 1 : -1;
  }
  return sort_events(std::move(s));
}

// A moving-shape stream of a random class, or a uniform-noise stream one time in four.
EventStream synthetic_stream(DeterministicRng& rng, const Geometry& g) {
  if (rng.uniform01() < 0.25) return random_stream(rng, g.height, g.width, g.duration, 50 + rng.uniform_index(400));
  const ShapeSpec spec = sample_shape_spec(rng.uniform_index(3), g, rng);
  return gen_stream(spec, g.bins, g.height, g.width, g.duration, rng);
}

}  // namespace

long long brute_force_mask_pixels(int src_width, int src_height, int width, int height, double scale, Point2 anchor,
                                  AnchorMode mode) {
  auto span_of = [scale](int n) {
    int lo = 0, hi = 0;
    for (int i = 0; i < n; ++i) {
      const int d = static_cast<int>(std::floor(i * scale));
      lo = i == 0 ? d : std::min(lo, d);
      hi = i == 0 ? d : std::max(hi, d);
    }
    return std::pair{lo, hi};
  };
  const auto [x_lo, x_hi] = span_of(src_width);
  const auto [y_lo, y_hi] = span_of(src_height);
  int ox = static_cast<int>(std::lround(anchor.x));
  int oy = static_cast<int>(std::lround(anchor.y));
  if (mode == AnchorMode::Center) {
    ox -= (x_hi - x_lo + 1) / 2;
    oy -= (y_hi - y_lo + 1) / 2;
  }
  std::vector<char> marked(static_cast<std::size_t>(width) * height, 0);
  for (int y = y_lo + oy; y <= y_hi + oy; ++y) {
    for (int x = x_lo + ox; x <= x_hi + ox; ++x) {
      if (x >= 0 && x < width && y >= 0 && y < height) marked[static_cast<std::size_t>(y) * width + x] = 1;
    }
  }
  return std::count(marked.begin(), marked.end(), 1);
}

double monte_carlo_donor_weight(double lambda_min, double lambda_max, std::size_t draws, std::uint64_t seed) {
  AugConfig cfg;
  cfg.lambda_min = lambda_min;
  cfg.lambda_max = lambda_max;
  cfg.mixnum = 1;
  const FrameTensor base(cfg.bins, 2, cfg.height, cfg.width);
  const FrameTensor donor(cfg.bins, 2, cfg.height, cfg.width);
  const Distribution y_base = one_hot(0, 2);
  const FrameDonor donors[1] = {{&donor, one_hot(1, 2)}};
  double total = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    DeterministicRng rng = child_rng(seed, i);
    total += 1.0 - eventzoom_frames(base, y_base, donors, cfg, rng).labels.averaged[0];
  }
  return draws > 0 ? total / static_cast<double>(draws) : 0.0;
}

bool same_tree(const fs::path& a, const fs::path& b) {
  auto listing = [](const fs::path& root) {
    std::map<std::string, Bytes> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file()) files[fs::relative(entry.path(), root).generic_string()] = read_file(entry.path());
    }
    return files;
  };
  return listing(a) == listing(b);
}

CheckResult check_interpolation() {
  return timed("interpolation endpoints and linearity", 1.0, true, [](std::string& detail) {
    DeterministicRng rng(0x1A7E);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      ZoomParams p;
      p.scale_start = rng.uniform(0.05, 3.0);
      p.scale_end = rng.uniform(0.05, 3.0);
      p.anchor_start = {rng.uniform(0, 64), rng.uniform(0, 64)};
      p.anchor_end = {rng.uniform(0, 64), rng.uniform(0, 64)};
      const int bins = 2 + static_cast<int>(rng.uniform_index(31));
      if (interp_scale(p, 0, bins) != p.scale_start || interp_scale(p, bins - 1, bins) != p.scale_end ||
          interp_pos(p, 0, bins) != p.anchor_start || interp_pos(p, bins - 1, bins) != p.anchor_end) {
        detail = fmt::format("endpoint mismatch at case {}", k);
        return false;
      }
      const double lo = std::min(p.scale_start, p.scale_end);
      const double hi = std::max(p.scale_start, p.scale_end);
      for (int t = 0; t < bins; ++t) {
        const double v = interp_scale(p, t, bins);
        if (v < lo || v > hi) {
          detail = fmt::format("scale outside endpoint range at case {} t={}", k, t);
          return false;
        }
        if (t > 0 && t < bins - 1) {
          const double d2 = interp_scale(p, t + 1, bins) - 2.0 * v + interp_scale(p, t - 1, bins);
          worst = std::max(worst, std::abs(d2));
        }
      }
    }
    detail = fmt::format("max |second difference| = {:.3e} (limit 1e-12)", worst);
    return worst < 1e-12;
  });
}

CheckResult check_label_simplex() {
  return timed("label simplex", 10.0, true, [](std::string& detail) {
    constexpr std::size_t kClasses = 10;
    DeterministicRng setup(0x51A1);
    std::vector<FrameTensor> pool;
    for (int i = 0; i < 8; ++i) pool.push_back(random_frames(setup, 8, 48, 48));
    for (int k = 0; k < 1000; ++k) {
      DeterministicRng rng = child_rng(0x51A2, k);
      AugConfig cfg;
      cfg.mixnum = static_cast<std::size_t>(k % 4);
      cfg.anchor_mode = k % 2 == 0 ? AnchorMode::Center : AnchorMode::TopLeft;
      std::vector<FrameDonor> donors;
      for (std::size_t d = 0; d < cfg.mixnum; ++d) {
        donors.push_back({&pool[rng.uniform_index(pool.size())], one_hot(rng.uniform_index(kClasses), kClasses)});
      }
      const auto y = one_hot(rng.uniform_index(kClasses), kClasses);
      const FramesResult r = eventzoom_frames(pool[rng.uniform_index(pool.size())], y, donors, cfg, rng);
      if (!track_ok(r.labels)) {
        detail = fmt::format("run {} produced an invalid label distribution", k);
        return false;
      }
    }
    detail = "1000 runs, mixnum 0..3, tolerance 1e-9";
    return true;
  });
}

CheckResult check_coverage_oracle() {
  return timed("coverage oracle equivalence", 5.0, true, [](std::string& detail) {
    DeterministicRng rng(0xC0FE);
    const FrameTensor donor48 = random_frames(rng, 1, 48, 48);
    const FrameTensor donor_odd = random_frames(rng, 1, 17, 23);
    const FrameTensor base48 = random_frames(rng, 1, 48, 48);
    const FrameTensor base_odd = random_frames(rng, 1, 17, 23);
    for (int k = 0; k < 1000; ++k) {
      const bool square = k % 2 == 0;
      const FrameTensor& donor = square ? donor48 : donor_odd;
      const FrameTensor& base = square ? base48 : base_odd;
      const int height = base.height();
      const int width = base.width();
      const double scale = rng.uniform(0.25, 2.0);
      const Point2 anchor{rng.uniform(0.0, width), rng.uniform(0.0, height)};
      const AnchorMode mode = (k / 2) % 2 == 0 ? AnchorMode::Center : AnchorMode::TopLeft;
      const EmbedStepOutput out = embed_step(step_view(base, 0), step_view(donor, 0), scale, anchor, mode);
      const long long pixels = brute_force_mask_pixels(width, height, width, height, scale, anchor, mode);
      const double expected = static_cast<double>(pixels) / (static_cast<double>(width) * height);
      if (out.coverage != expected || out.mask.area() != pixels) {
        detail = fmt::format("case {}: closed form {} vs oracle {}", k, out.coverage, expected);
        return false;
      }
    }
    detail = "1000 cases on 48x48 and 17x23, exact";
    return true;
  });
}

CheckResult check_domain_equivalence() {
  return timed("domain equivalence (events vs frames)", 30.0, true, [](std::string& detail) {
    const Geometry g{};
    for (int k = 0; k < 200; ++k) {
      DeterministicRng gen = child_rng(0xD0E0, k);
      AugConfig cfg;
      cfg.mixnum = gen.uniform_index(4);
      cfg.lambda_min = gen.uniform(0.2, 1.2);
      cfg.lambda_max = cfg.lambda_min + gen.uniform(0.0, 1.0);
      cfg.bins = 1 + static_cast<int>(gen.uniform_index(12));
      cfg.anchor_mode = gen.uniform01() < 0.5 ? AnchorMode::Center : AnchorMode::TopLeft;

      const EventStream base = synthetic_stream(gen, g);
      std::vector<EventStream> donor_streams;
      for (std::size_t d = 0; d < cfg.mixnum; ++d) donor_streams.push_back(synthetic_stream(gen, g));
      const auto y = one_hot(gen.uniform_index(5), 5);

      std::vector<EventDonor> ev_donors;
      std::vector<FrameTensor> donor_frames;
      donor_frames.reserve(cfg.mixnum);
      std::vector<FrameDonor> fr_donors;
      for (const auto& s : donor_streams) {
        const auto label = one_hot(gen.uniform_index(5), 5);
        ev_donors.push_back({&s, label});
        donor_frames.push_back(rasterize(s, cfg.bins, g.height, g.width));
        fr_donors.push_back({&donor_frames.back(), label});
      }

      const std::uint64_t seed = gen.next_u64();
      DeterministicRng rng_events(seed);
      DeterministicRng rng_frames(seed);
      const EventsResult sparse = eventzoom_events(base, y, ev_donors, cfg, rng_events);
      const FramesResult dense =
          eventzoom_frames(rasterize(base, cfg.bins, g.height, g.width), y, fr_donors, cfg, rng_frames);
      if (!validate_stream(sparse.stream).empty()) {
        detail = fmt::format("case {}: sparse result violates stream invariants", k);
        return false;
      }
      if (!bit_equal(rasterize(sparse.stream, cfg.bins, g.height, g.width), dense.frames) ||
          sparse.labels != dense.labels || rng_events.draws() != rng_frames.draws()) {
        detail = fmt::format("case {}: sparse and dense results differ", k);
        return false;
      }
    }
    detail = "200 random synthetic cases, bit-exact";
    return true;
  });
}

CheckResult check_ablation_equivalence() {
  return timed("PS_PP ablation equals eventzoom(mixnum=1)", 0.0, true, [](std::string& detail) {
    const AblationVariant ps_pp = *find_ablation_variant("PS_PP");
    for (int k = 0; k < 100; ++k) {
      DeterministicRng gen = child_rng(0xAB1A, k);
      AugConfig cfg;
      cfg.mixnum = 1;
      cfg.anchor_mode = k % 2 == 0 ? AnchorMode::Center : AnchorMode::TopLeft;
      const FrameTensor base = random_frames(gen, cfg.bins, cfg.height, cfg.width);
      const FrameTensor donor = random_frames(gen, cfg.bins, cfg.height, cfg.width);
      const auto y_base = one_hot(0, 4);
      const auto y_donor = one_hot(1 + gen.uniform_index(3), 4);
      const std::uint64_t seed = gen.next_u64();
      DeterministicRng a(seed), b(seed);
      const MixResult abl = ablation_augment(base, y_base, donor, y_donor, ps_pp, cfg, a);
      const FrameDonor donors[1] = {{&donor, y_donor}};
      const FramesResult zoom = eventzoom_frames(base, y_base, donors, cfg, b);
      if (!bit_equal(abl.frames, zoom.frames) || abl.labels != zoom.labels || a.draws() != b.draws()) {
        detail = fmt::format("case {} differs", k);
        return false;
      }
    }
    detail = "100 cases, bit-exact frames and labels, equal draw counts";
    return true;
  });
}

CheckResult check_determinism(const fs::path& scratch) {
  return timed("augment_dataset determinism", 60.0, true, [&](std::string& detail) {
    const fs::path data = scratch / "determinism_data";
    fs::remove_all(data);
    const DatasetManifest manifest = gen_dataset(2, 50, data, 11, Geometry{}, 4);
    AugConfig cfg;
    cfg.mixnum = 2;
    cfg.master_seed = 3;
    auto run = [&](const std::string& name, int workers, std::uint64_t seed) {
      AugConfig c = cfg;
      c.master_seed = seed;
      const fs::path out = scratch / name;
      fs::remove_all(out);
      augment_dataset(manifest, data, c, out, AugmentOptions{workers, std::nullopt});
      return out;
    };
    const fs::path w1 = run("det_w1", 1, 3);
    const fs::path w8 = run("det_w8", 8, 3);
    const fs::path again = run("det_again", 1, 3);
    const fs::path other = run("det_seed4", 1, 4);
    const bool workers_ok = same_tree(w1, w8);
    const bool repeat_ok = same_tree(w1, again);
    const bool seed_differs = !same_tree(w1, other);
    detail = fmt::format("workers 1 vs 8: {}, repeat: {}, seed 3 vs 4 differ: {}", workers_ok ? "identical" : "DIFFER",
                         repeat_ok ? "identical" : "DIFFER", seed_differs ? "yes" : "NO");
    return workers_ok && repeat_ok && seed_differs;
  });
}

CheckResult check_identity_cases() {
  return timed("identity cases", 0.0, true, [](std::string& detail) {
    for (const auto& [height, width] : {std::pair{48, 48}, std::pair{17, 23}}) {
      DeterministicRng rng(0x1D + height);
      const FrameTensor base = random_frames(rng, 8, height, width);
      const FrameTensor donor = random_frames(rng, 8, height, width);
      const auto y_base = one_hot(2, 5);
      const auto y_donor = one_hot(4, 5);

      AugConfig cfg;
      cfg.mixnum = 0;
      cfg.height = height;
      cfg.width = width;
      const FramesResult none = eventzoom_frames(base, y_base, {}, cfg, rng);
      if (!bit_equal(none.frames, base) || none.labels != SoftLabelTrack::constant(y_base, 8)) {
        detail = fmt::format("{}x{}: mixnum=0 changed the sample", height, width);
        return false;
      }

      ZoomParams p;
      p.anchor_start = p.anchor_end = {(width - 1) / 2.0, (height - 1) / 2.0};
      const FrameDonor donors[1] = {{&donor, y_donor}};
      const ZoomParams params[1] = {p};
      const FramesResult full = eventzoom_frames(base, y_base, donors, params, AnchorMode::Center);
      if (!bit_equal(full.frames, donor) || full.labels != SoftLabelTrack::constant(y_donor, 8)) {
        detail = fmt::format("{}x{}: unit-scale centred donor did not replace the base", height, width);
        return false;
      }
    }
    detail = "mixnum=0 identity; unit scale centred -> donor with donor label";
    return true;
  });
}

CheckResult check_mixing_strength() {
  return timed("monotone mixing strength", 10.0, true, [](std::string& detail) {
    const double wide = monte_carlo_donor_weight(0.5, 1.5, 10000, 0x3A);
    const double narrow = monte_carlo_donor_weight(0.2, 0.6, 10000, 0x3B);
    detail = fmt::format("mean donor weight 0.5-1.5: {:.4f}, 0.2-0.6: {:.4f}, margin {:.4f} (need > 0.1)", wide,
                         narrow, wide - narrow);
    return wide - narrow > 0.1;
  });
}

CheckResult check_codecs() {
  return timed("codec round trips and splitmix64 vector", 0.0, true, [](std::string& detail) {
    DeterministicRng zero(0);
    if (zero.next_u64() != 0xE220A8397B1DCDAFull) {
      detail = "splitmix64 first output from state 0 mismatch";
      return false;
    }
    DeterministicRng rng(0xC0DEC);
    for (int k = 0; k < 20; ++k) {
      const int height = 1 + static_cast<int>(rng.uniform_index(300));
      const int width = 1 + static_cast<int>(rng.uniform_index(300));
      const EventStream s = random_stream(rng, height, width, 1 + static_cast<std::uint32_t>(rng.uniform_index(1u << 30)),
                                          rng.uniform_index(2000));
      const Bytes evt = write_evt(s);
      if (read_evt(evt) != s || write_evt(read_evt(evt)) != evt) {
        detail = fmt::format("EVT1 round trip failed on fixture {}", k);
        return false;
      }
      if (read_csv(write_csv(s), s.width, s.height, s.duration) != s) {
        detail = fmt::format("CSV round trip failed on fixture {}", k);
        return false;
      }

      FrameTensor f(1 + static_cast<int>(rng.uniform_index(8)), 2, 1 + static_cast<int>(rng.uniform_index(40)),
                    1 + static_cast<int>(rng.uniform_index(40)));
      for (float& v : f.values()) v = static_cast<float>(rng.uniform(0.0, 100.0));
      SoftLabelTrack track;
      track.num_classes = 1 + rng.uniform_index(12);
      track.per_step.assign(f.bins(), Distribution(track.num_classes));
      for (auto& step : track.per_step) {
        for (double& v : step) v = static_cast<float>(rng.uniform01());
      }
      track.averaged.resize(track.num_classes);
      for (double& v : track.averaged) v = static_cast<float>(rng.uniform01());
      const Bytes plain = write_evzf(f);
      const Bytes labelled = write_evzf(f, &track);
      const FrameFile a = read_evzf(plain);
      const FrameFile b = read_evzf(labelled);
      if (!bit_equal(a.frames, f) || a.labels || !bit_equal(b.frames, f) || !b.labels || *b.labels != track ||
          write_evzf(b.frames, &*b.labels) != labelled) {
        detail = fmt::format("EVZF round trip failed on fixture {}", k);
        return false;
      }
    }
    DatasetManifest m;
    m.num_classes = 7;
    for (int i = 0; i < 100; ++i) {
      m.entries.push_back({fmt::format("dir{}/file {}.evt", i % 5, i), rng.uniform_index(7),
                           i % 3 == 0 ? EntryKind::Frames : EntryKind::Events});
    }
    if (read_manifest(write_manifest(m)) != m) {
      detail = "manifest round trip failed";
      return false;
    }
    detail = "EVT1, CSV, EVZF (+labels), manifest; splitmix64(0) = 0xE220A8397B1DCDAF";
    return true;
  });
}

CheckResult check_benchmark() {
  return timed("benchmark sanity (eventzoom mixnum=2 < 5 ms)", 0.0, true, [](std::string& detail) {
    const Strategy strategy{StrategyKind::EventZoom};
    const auto rows = run_bench(std::span(&strategy, 1), 300, 0xBE, 1);
    const double mean = rows.front().mean_ms;
    detail = fmt::format("mean {:.4f} ms, median {:.4f} ms, p99 {:.4f} ms single-threaded ({} kernels)", mean,
                         rows.front().median_ms, rows.front().p99_ms, kernels::active().name);
    return mean < 5.0;
  });
}

CheckResult check_extent_soundness() {
  return timed("splat extent soundness and mass conservation", 0.0, false, [](std::string& detail) {
    DeterministicRng rng(0xE7);
    for (int hs = 1; hs <= 16; ++hs) {
      for (int ws = 1; ws <= 16; ++ws) {
        for (double scale : {0.25, 0.5, 1.0, 1.5, 2.0}) {
          FrameTensor src(1, 2, hs, ws);
          for (float& v : src.values()) v = 1.0f + static_cast<float>(rng.uniform_index(3));
          const int ox = static_cast<int>(rng.uniform_index(9)) - 4;
          const int oy = static_cast<int>(rng.uniform_index(9)) - 4;
          // Canvas large enough that nothing clips, with a margin to detect strays.
          FrameTensor canvas(1, 2, 48, 48);
          splat(step_view(src, 0), scale, ox + 8, oy + 8, step_view(canvas, 0));
          const Rect extent = splat_extent(ws, hs, scale, ox + 8, oy + 8);
          for (int c = 0; c < 2; ++c) {
            for (int y = 0; y < 48; ++y) {
              for (int x = 0; x < 48; ++x) {
                if (canvas.at(0, c, y, x) != 0.0f && !extent.contains(x, y)) {
                  detail = fmt::format("{}x{} scale {}: destination outside extent", hs, ws, scale);
                  return false;
                }
              }
            }
          }
          if (canvas.sum() != src.sum()) {
            detail = fmt::format("{}x{} scale {}: mass not conserved", hs, ws, scale);
            return false;
          }
        }
      }
    }
    detail = "sources up to 16x16, scales {0.25, 0.5, 1, 1.5, 2}";
    return true;
  });
}

CheckResult check_kernel_equivalence() {
  return timed("SIMD kernels match scalar reference", 0.0, false, [](std::string& detail) {
    const kernels::KernelTable* simd = kernels::avx2();
    if (simd == nullptr) {
      detail = "no SIMD variant on this CPU; scalar only";
      return true;
    }
    const auto& ref = kernels::scalar();
    DeterministicRng rng(0x5D);
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 15u, 16u, 17u, 48u, 63u, 1000u, 4608u}) {
      std::vector<float> a(n), b(n), x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = static_cast<float>(rng.uniform(-10.0, 10.0));
        b[i] = static_cast<float>(rng.uniform(-10.0, 10.0));
      }
      const float wa = static_cast<float>(rng.uniform01());
      ref.blend(x, a, b, wa, 1.0f - wa);
      simd->blend(y, a, b, wa, 1.0f - wa);
      if (!bit_equal(x, y)) return detail = fmt::format("blend differs at n={}", n), false;
      x = a;
      y = a;
      ref.accumulate(x, b);
      simd->accumulate(y, b);
      if (!bit_equal(x, y)) return detail = fmt::format("accumulate differs at n={}", n), false;
      ref.copy(x, b);
      simd->copy(y, b);
      if (!bit_equal(x, y)) return detail = fmt::format("copy differs at n={}", n), false;
      ref.fill(x, 3.5f);
      simd->fill(y, 3.5f);
      if (!bit_equal(x, y)) return detail = fmt::format("fill differs at n={}", n), false;
      for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<float>(rng.uniform_index(50));
      if (ref.sum(a) != simd->sum(a)) return detail = fmt::format("sum differs at n={}", n), false;
    }
    detail = fmt::format("scalar vs {}: bit-exact", simd->name);
    return true;
  });
}

CheckResult check_draw_count_audit() {
  return timed("RNG draw-count audit", 0.0, false, [](std::string& detail) {
    LoadedDataset data;
    data.num_classes = 3;
    DeterministicRng gen(0xA0D);
    for (int i = 0; i < 6; ++i) {
      data.classes.push_back(static_cast<std::size_t>(i % 3));
      data.paths.push_back(fmt::format("mem{}", i));
      data.frames.emplace_back(random_frames(gen, 8, 48, 48));
      data.events.emplace_back();
      data.errors.emplace_back();
    }
    std::size_t collisions = 0;
    for (std::size_t mixnum = 0; mixnum <= 4; ++mixnum) {
      AugConfig cfg;
      cfg.mixnum = mixnum;
      for (std::size_t i = 0; i < data.size(); ++i) {
        cfg.master_seed = 100 + mixnum;
        const AugmentedSample s = augment_sample(data, i, cfg);
        collisions += s.collisions;
        if (s.rng_draws != mixnum * 7 + s.collisions) {
          detail = fmt::format("mixnum {} sample {}: {} draws, expected {}", mixnum, i, s.rng_draws,
                               mixnum * 7 + s.collisions);
          return false;
        }
      }
    }
    AugConfig cfg;
    for (const auto& v : kAblationVariants) {
      auto draws_for = [&](ParamMode m, std::uint64_t per_point) -> std::uint64_t {
        switch (m) {
          case ParamMode::Progressive: return 2 * per_point;
          case ParamMode::RandomPerStep: return static_cast<std::uint64_t>(cfg.bins) * per_point;
          case ParamMode::Fixed: return per_point;
        }
        return 0;
      };
      DeterministicRng rng(7);
      draw_schedule(v, cfg, rng);
      const std::uint64_t expected = draws_for(v.scale_mode, 1) + draws_for(v.position_mode, 2);
      if (rng.draws() != expected) {
        detail = fmt::format("{}: {} draws, expected {}", v.name, rng.draws(), expected);
        return false;
      }
    }
    detail = fmt::format("pipeline: mixnum*7 + re-draws ({} re-draws seen); ablation schedules per mode", collisions);
    return true;
  });
}

std::vector<CheckResult> run_all(const Options& options) {
  fs::path scratch = options.scratch_dir;
  const bool temporary = scratch.empty();
  if (temporary) scratch = fs::temp_directory_path() / fmt::format("evz_verify_{}", ::getpid());
  fs::create_directories(scratch);

  std::vector<CheckResult> results;
  results.push_back(check_interpolation());
  results.push_back(check_label_simplex());
  results.push_back(check_coverage_oracle());
  results.push_back(check_domain_equivalence());
  results.push_back(check_ablation_equivalence());
  results.push_back(check_determinism(scratch));
  results.push_back(check_identity_cases());
  results.push_back(check_mixing_strength());
  results.push_back(check_codecs());
  results.push_back(check_benchmark());
  if (options.include_invariants) {
    results.push_back(check_extent_soundness());
    results.push_back(check_kernel_equivalence());
    results.push_back(check_draw_count_audit());
  }
  if (temporary) {
    std::error_code ec;
    fs::remove_all(scratch, ec);
  }
  return results;
}

std::string format_result(const CheckResult& r) {
  return fmt::format("{} [{}] {} ({:.3f} s) {}", r.passed ? "PASS" : "FAIL", r.acceptance ? "acceptance" : "invariant",
                     r.name, r.seconds, r.detail);
}

}  // namespace evz::verify
