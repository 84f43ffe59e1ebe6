#include "evz/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "evz/parallel.hpp"
#include "evz/raster.hpp"

namespace evz {
namespace {

double segment_distance(double px, double py, Point2 a, Point2 b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double u = len2 > 0.0 ? ((px - a.x) * vx + (py - a.y) * vy) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return std::hypot(px - (a.x + u * vx), py - (a.y + u * vy));
}

template <std::size_t N>
bool on_polygon(double px, double py, const std::array<Point2, N>& vertices) {
  for (std::size_t i = 0; i < N; ++i) {
    if (segment_distance(px, py, vertices[i], vertices[(i + 1) % N]) <= 0.5) return true;
  }
  return false;
}

std::uint32_t ceil_div(std::uint64_t num, std::uint64_t den) { return static_cast<std::uint32_t>((num + den - 1) / den); }

}  // namespace

std::vector<std::pair<int, int>> shape_outline(ShapeKind kind, double size, Point2 center, int height, int width) {
  const double half = size / 2.0;
  const int x_lo = std::max(0, static_cast<int>(std::floor(center.x - half - 1.0)));
  const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(center.x + half + 1.0)));
  const int y_lo = std::max(0, static_cast<int>(std::floor(center.y - half - 1.0)));
  const int y_hi = std::min(height - 1, static_cast<int>(std::ceil(center.y + half + 1.0)));

  const std::array<Point2, 4> square{{{center.x - half, center.y - half},
                                      {center.x + half, center.y - half},
                                      {center.x + half, center.y + half},
                                      {center.x - half, center.y + half}}};
  const std::array<Point2, 3> triangle{{{center.x, center.y - half},
                                        {center.x + half, center.y + half},
                                        {center.x - half, center.y + half}}};

  std::vector<std::pair<int, int>> pixels;
  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) {
      bool hit = false;
      switch (kind) {
        case ShapeKind::Square: hit = on_polygon(x, y, square); break;
        case ShapeKind::Triangle: hit = on_polygon(x, y, triangle); break;
        case ShapeKind::Circle: hit = std::abs(std::hypot(x - center.x, y - center.y) - half) <= 0.5; break;
      }
      if (hit) pixels.emplace_back(x, y);
    }
  }
  return pixels;
}

EventStream gen_stream(const ShapeSpec& spec, int bins, int height, int width, std::uint32_t duration,
                       DeterministicRng& rng) {
  if (bins < 1 || height < 1 || width < 1 || height > 65535 || width > 65535) throw Error("invalid geometry");
  if (duration < static_cast<std::uint32_t>(bins)) throw Error("duration shorter than bin count");
  EventStream s{static_cast<std::uint16_t>(width), static_cast<std::uint16_t>(height), duration, {}};

  std::vector<std::vector<std::pair<int, int>>> outlines(bins);
  for (int b = 0; b < bins; ++b) {
    const Point2 c{spec.start.x + spec.velocity.x * b, spec.start.y + spec.velocity.y * b};
    outlines[b] = shape_outline(spec.kind, spec.size, c, height, width);
    if (outlines[b].empty()) throw Error("shape escapes frame");
  }
  if (!(spec.events_per_edge_pixel > 0.0)) return s;

  std::poisson_distribution<int> poisson(spec.events_per_edge_pixel);
  for (int b = 0; b < bins; ++b) {
    const Point2 c{spec.start.x + spec.velocity.x * b, spec.start.y + spec.velocity.y * b};
    const std::uint32_t lo = ceil_div(static_cast<std::uint64_t>(b) * duration, bins);
    const std::uint32_t hi = ceil_div(static_cast<std::uint64_t>(b + 1) * duration, bins);
    for (const auto& [x, y] : outlines[b]) {
      const double facing = (x - c.x) * spec.velocity.x + (y - c.y) * spec.velocity.y;
      const std::int8_t polarity = facing >= 0.0 ? 1 : -1;
      const int count = poisson(rng);
      for (int k = 0; k < count; ++k) {
        const auto t = lo + static_cast<std::uint32_t>(rng.uniform_index(hi - lo));
        s.events.push_back(Event{t, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y), polarity});
      }
    }
  }
  return sort_events(std::move(s));
}

ShapeSpec sample_shape_spec(std::size_t class_id, const Geometry& g, DeterministicRng& rng) {
  struct Band {
    double size_lo, size_hi;
  };
  constexpr std::array<Band, 3> bands{{{0.22, 0.32}, {0.30, 0.42}, {0.38, 0.50}}};
  if (class_id >= bands.size()) throw Error("class out of range");

  const double dim = std::min(g.height, g.width);
  ShapeSpec spec;
  spec.kind = static_cast<ShapeKind>(class_id);
  spec.size = dim * rng.uniform(bands[class_id].size_lo, bands[class_id].size_hi);

  const double angle = 2.0 * std::numbers::pi * static_cast<double>(class_id) / 3.0 + rng.uniform(-0.3, 0.3);
  const double speed = dim / 48.0 * rng.uniform(0.8, 1.6);
  spec.velocity = {speed * std::cos(angle), speed * std::sin(angle)};

  // Centre the trajectory near the frame centre with some jitter.
  const double travel = static_cast<double>(std::max(g.bins - 1, 0));
  const double cx = g.width / 2.0 + dim * rng.uniform(-0.12, 0.12);
  const double cy = g.height / 2.0 + dim * rng.uniform(-0.12, 0.12);
  spec.start = {cx - spec.velocity.x * travel / 2.0, cy - spec.velocity.y * travel / 2.0};
  spec.events_per_edge_pixel = rng.uniform(1.5, 3.0);
  return spec;
}

std::vector<std::pair<EventStream, std::size_t>> gen_samples(std::size_t num_classes, std::size_t samples_per_class,
                                                             std::uint64_t master_seed, const Geometry& g) {
  if (num_classes < 2 || num_classes > 3) throw Error("num_classes must be 2 or 3");
  std::vector<std::pair<EventStream, std::size_t>> out;
  out.reserve(num_classes * samples_per_class);
  for (std::size_t k = 0; k < num_classes; ++k) {
    for (std::size_t j = 0; j < samples_per_class; ++j) {
      DeterministicRng rng = child_rng(master_seed, k * samples_per_class + j);
      const ShapeSpec spec = sample_shape_spec(k, g, rng);
      out.emplace_back(gen_stream(spec, g.bins, g.height, g.width, g.duration, rng), k);
    }
  }
  return out;
}

DatasetManifest gen_dataset(std::size_t num_classes, std::size_t samples_per_class,
                            const std::filesystem::path& out_dir, std::uint64_t master_seed, const Geometry& g,
                            int workers) {
  if (num_classes < 2 || num_classes > 3) throw Error("num_classes must be 2 or 3");
  namespace fs = std::filesystem;
  std::error_code ec;
  for (std::size_t k = 0; k < num_classes; ++k) {
    fs::create_directories(out_dir / fmt::format("class{}", k), ec);
    if (ec) throw Error(fmt::format("{}: {}", (out_dir / fmt::format("class{}", k)).string(), ec.message()));
  }

  DatasetManifest manifest;
  manifest.num_classes = num_classes;
  const std::size_t total = num_classes * samples_per_class;
  manifest.entries.resize(total);
  parallel_for(total, workers, [&](std::size_t i) {
    const std::size_t k = i / samples_per_class;
    DeterministicRng rng = child_rng(master_seed, i);
    const ShapeSpec spec = sample_shape_spec(k, g, rng);
    const EventStream s = gen_stream(spec, g.bins, g.height, g.width, g.duration, rng);
    const std::string rel = fmt::format("class{}/sample_{:05}.evt", k, i);
    write_file(out_dir / rel, write_evt(s));
    manifest.entries[i] = ManifestEntry{rel, k, EntryKind::Events};
  });
  write_text_file(out_dir / "manifest.txt", write_manifest(manifest));
  return manifest;
}

}  // namespace evz
