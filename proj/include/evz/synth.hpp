#pragma once

// Synthetic moving-shape event data. Class k is shape kind k.

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "evz/codec.hpp"
#include "evz/event.hpp"
#include "evz/rng.hpp"
#include "evz/zoom.hpp"

namespace evz {

enum class ShapeKind { Square = 0, Circle = 1, Triangle = 2 };

struct ShapeSpec {
  ShapeKind kind = ShapeKind::Square;
  double size = 12.0;      // side / diameter / triangle height, pixels
  Point2 start{};          // centre at bin 0
  Point2 velocity{};       // pixels per bin
  double events_per_edge_pixel = 2.0;
};

struct Geometry {
  int bins = 8;
  int height = 48;
  int width = 48;
  std::uint32_t duration = 8000;
};

/// In-frame outline pixels (x, y) of a shape centred at `center`.
std::vector<std::pair<int, int>> shape_outline(ShapeKind kind, double size, Point2 center, int height, int width);

/// Renders the outline at start + velocity * b for every bin b and emits
/// Poisson(rate) events per outline pixel, timestamps uniform within the bin.
/// Leading-edge pixels (facing the motion) fire +1, the rest -1. Throws
/// Error("shape escapes frame") if any bin has no in-frame outline pixel.
EventStream gen_stream(const ShapeSpec& spec, int bins, int height, int width, std::uint32_t duration,
                       DeterministicRng& rng);

/// Per-class parameter ranges: size band and motion direction depend on the class.
ShapeSpec sample_shape_spec(std::size_t class_id, const Geometry& g, DeterministicRng& rng);

/// Writes class<k>/sample_<i>.evt files and manifest.txt under out_dir.
/// Sample i draws from child_rng(master_seed, i); output is independent of `workers`.
DatasetManifest gen_dataset(std::size_t num_classes, std::size_t samples_per_class,
                            const std::filesystem::path& out_dir, std::uint64_t master_seed, const Geometry& g,
                            int workers = 1);

/// Same generation without touching the filesystem; returns (stream, class id) pairs.
std::vector<std::pair<EventStream, std::size_t>> gen_samples(std::size_t num_classes, std::size_t samples_per_class,
                                                             std::uint64_t master_seed, const Geometry& g);

}  // namespace evz
