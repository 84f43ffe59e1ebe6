#include <doctest.h>

#include <set>

#include "evz/codec.hpp"
#include "evz/raster.hpp"
#include "evz/synth.hpp"
#include "evz/verify.hpp"
#include "helpers.hpp"

using namespace evz;

TEST_CASE("rate 0 gives an empty stream") {
  DeterministicRng rng(1);
  ShapeSpec spec{ShapeKind::Circle, 12, {24, 24}, {1, 0}, 0.0};
  const auto s = gen_stream(spec, 8, 48, 48, 8000, rng);
  CHECK(s.events.empty());
  CHECK(s.width == 48);
  CHECK(s.duration == 8000);
}

TEST_CASE("static shape: every event lies on the outline") {
  DeterministicRng rng(2);
  for (auto kind : {ShapeKind::Square, ShapeKind::Circle, ShapeKind::Triangle}) {
    ShapeSpec spec{kind, 16, {24, 20}, {0, 0}, 5.0};
    const auto s = gen_stream(spec, 8, 48, 48, 8000, rng);
    const auto outline = shape_outline(kind, 16, {24, 20}, 48, 48);
    const std::set<std::pair<int, int>> on(outline.begin(), outline.end());
    REQUIRE_FALSE(s.events.empty());
    for (const auto& e : s.events) CHECK(on.count({e.x, e.y}) == 1);
    CHECK(validate_stream(s).empty());
    // Every bin receives events.
    const auto f = rasterize(s, 8, 48, 48);
    for (int t = 0; t < 8; ++t) {
      double bin_sum = 0.0;
      for (float v : f.step(t)) bin_sum += v;
      CHECK(bin_sum > 0.0);
    }
  }
}

TEST_CASE("moving shape polarity follows the leading edge") {
  DeterministicRng rng(3);
  ShapeSpec spec{ShapeKind::Square, 12, {14, 24}, {2, 0}, 4.0};
  const auto s = gen_stream(spec, 8, 48, 48, 8000, rng);
  // Moving right: at bin 0 the right edge (x = 20) fires +1, the left edge (x = 8) -1.
  for (const auto& e : s.events) {
    if (bin_of(e.t, 8, 8000) != 0) continue;
    if (e.x == 20) CHECK(e.polarity == 1);
    if (e.x == 8) CHECK(e.polarity == -1);
  }
}

TEST_CASE("shape escaping the frame") {
  DeterministicRng rng(4);
  ShapeSpec spec{ShapeKind::Square, 6, {24, 24}, {20, 0}, 1.0};
  CHECK_THROWS_WITH_AS(gen_stream(spec, 8, 48, 48, 8000, rng), "shape escapes frame", Error);
}

TEST_CASE("gen_dataset layout and determinism") {
  testing::TempDir a("synth_a"), b("synth_b"), c("synth_c");
  const Geometry g;
  const auto m = gen_dataset(3, 10, a.path(), 5, g);
  CHECK(m.num_classes == 3);
  CHECK(m.entries.size() == 30);
  CHECK(load_manifest(a.path() / "manifest.txt") == m);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(a.path())) {
    if (entry.path().extension() == ".evt") {
      ++files;
      CHECK(validate_stream(load_evt(entry.path())).empty());
    }
  }
  CHECK(files == 30);
  gen_dataset(3, 10, b.path(), 5, g, 4);
  CHECK(verify::same_tree(a.path(), b.path()));
  gen_dataset(3, 10, c.path(), 6, g);
  CHECK_FALSE(verify::same_tree(a.path(), c.path()));
  CHECK_THROWS_AS(gen_dataset(4, 1, c.path(), 6, g), Error);
}

TEST_CASE("centroid classifier separates the classes") {
  const Geometry g;
  const auto train = gen_samples(3, 50, 1234, g);
  const auto test = gen_samples(3, 50, 98765, g);
  const std::size_t dim = static_cast<std::size_t>(g.bins) * 2 * g.height * g.width;
  std::vector<std::vector<double>> centroid(3, std::vector<double>(dim, 0.0));
  std::vector<int> count(3, 0);
  auto features = [&](const EventStream& s) {
    const auto f = rasterize(s, g.bins, g.height, g.width);
    std::vector<double> v(f.values().begin(), f.values().end());
    double norm = 0.0;
    for (double x : v) norm += x;
    if (norm > 0) {
      for (double& x : v) x /= norm;
    }
    return v;
  };
  for (const auto& [s, cls] : train) {
    const auto v = features(s);
    for (std::size_t i = 0; i < dim; ++i) centroid[cls][i] += v[i];
    ++count[cls];
  }
  for (int k = 0; k < 3; ++k) {
    for (double& x : centroid[k]) x /= count[k];
  }
  int correct = 0;
  for (const auto& [s, cls] : test) {
    const auto v = features(s);
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t k = 0; k < 3; ++k) {
      double d = 0.0;
      for (std::size_t i = 0; i < dim; ++i) d += (v[i] - centroid[k][i]) * (v[i] - centroid[k][i]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    correct += best == cls;
  }
  MESSAGE("centroid accuracy " << correct << "/150");
  CHECK(test.size() == 150);
  CHECK(correct > 90);
}
