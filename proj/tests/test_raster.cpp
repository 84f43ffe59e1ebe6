#include <doctest.h>

#include "evz/raster.hpp"
#include "evz/rng.hpp"
#include "helpers.hpp"

using namespace evz;

TEST_CASE("rasterize empty stream") {
  const auto f = rasterize(EventStream{48, 48, 1000, {}}, 8, 48, 48);
  CHECK(f.bins() == 8);
  CHECK(f.channels() == 2);
  CHECK(f.sum() == 0.0);
}

TEST_CASE("rasterize single event") {
  const auto f = rasterize(EventStream{48, 48, 800, {{0, 3, 4, 1}}}, 8, 48, 48);
  CHECK(f.at(0, 0, 4, 3) == 1.0f);
  CHECK(f.sum() == 1.0);
}

TEST_CASE("rasterize counts and polarity totals") {
  DeterministicRng rng(21);
  const auto s = testing::random_stream(rng, 1000, 48, 48, 10000);
  const auto f = rasterize(s, 8, 48, 48);
  CHECK(f.sum() == 1000.0);
  double positive = 0.0;
  for (int t = 0; t < 8; ++t) {
    for (int y = 0; y < 48; ++y) {
      for (int x = 0; x < 48; ++x) positive += f.at(t, 0, y, x);
    }
  }
  std::size_t expected = 0;
  for (const auto& e : s.events) expected += e.polarity > 0;
  CHECK(positive == static_cast<double>(expected));
}

TEST_CASE("bin_of closes the last bin") {
  CHECK(bin_of(0, 8, 800) == 0);
  CHECK(bin_of(99, 8, 800) == 0);
  CHECK(bin_of(100, 8, 800) == 1);
  CHECK(bin_of(799, 8, 800) == 7);
  CHECK(bin_of(800, 8, 800) == 7);
}

TEST_CASE("rasterize errors") {
  CHECK_THROWS_WITH_AS(rasterize(EventStream{48, 48, 0, {{0, 1, 1, 1}}}, 8, 48, 48), "zero-duration stream", Error);
  CHECK_THROWS_AS(rasterize(EventStream{40, 48, 10, {}}, 8, 48, 48), Error);
}

TEST_CASE("splat at half scale sums into one cell") {
  FrameTensor src(1, 1, 2, 2);
  src.at(0, 0, 0, 0) = 1;
  src.at(0, 0, 0, 1) = 2;
  src.at(0, 0, 1, 0) = 3;
  src.at(0, 0, 1, 1) = 4;
  FrameTensor canvas(1, 1, 2, 2);
  splat(step_view(src, 0), 0.5, 0, 0, step_view(canvas, 0));
  CHECK(canvas.at(0, 0, 0, 0) == 10.0f);
  CHECK(canvas.at(0, 0, 0, 1) == 0.0f);
  CHECK(canvas.at(0, 0, 1, 0) == 0.0f);
  CHECK(canvas.at(0, 0, 1, 1) == 0.0f);
}

TEST_CASE("splat at unit scale is identity") {
  DeterministicRng rng(2);
  const auto src = testing::random_counts(rng, 1, 9, 7);
  FrameTensor canvas(1, 2, 9, 7);
  splat(step_view(src, 0), 1.0, 0, 0, step_view(canvas, 0));
  CHECK(canvas == src);
}

TEST_CASE("splat at double scale leaves holes") {
  FrameTensor src(1, 1, 2, 2);
  for (float& v : src.values()) v = 1.0f;
  FrameTensor canvas(1, 1, 4, 4);
  splat(step_view(src, 0), 2.0, 0, 0, step_view(canvas, 0));
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      const bool hit = y % 2 == 0 && x % 2 == 0;
      CHECK(canvas.at(0, 0, y, x) == (hit ? 1.0f : 0.0f));
    }
  }
}

TEST_CASE("splat clips out-of-canvas destinations") {
  DeterministicRng rng(3);
  const auto src = testing::random_counts(rng, 1, 10, 10);
  FrameTensor canvas(1, 2, 10, 10);
  splat(step_view(src, 0), 1.0, 5, -3, step_view(canvas, 0));
  CHECK(canvas.sum() <= src.sum());
  CHECK(canvas.at(0, 1, 0, 5) == src.at(0, 1, 3, 0));
  CHECK(canvas.at(0, 0, 6, 9) == src.at(0, 0, 9, 4));
}

TEST_CASE("splat preserves mass when the extent is inside") {
  DeterministicRng rng(4);
  for (double scale : {0.3, 0.5, 0.75, 1.0, 1.25, 2.0}) {
    const auto src = testing::random_counts(rng, 1, 12, 12);
    FrameTensor canvas(1, 2, 30, 30);
    splat(step_view(src, 0), scale, 2, 1, step_view(canvas, 0));
    CHECK(canvas.sum() == src.sum());
  }
}

TEST_CASE("splat extent") {
  CHECK(splat_extent(48, 48, 0.5, 0, 0) == Rect{0, 0, 24, 24});
  CHECK(splat_extent(48, 48, 1.0, 0, 0) == Rect{0, 0, 48, 48});
  CHECK(splat_extent(48, 48, 1.5, 0, 0) == Rect{0, 0, 71, 71});
  CHECK(splat_extent(48, 30, 0.5, 3, -2) == Rect{3, -2, 24, 15});
}

TEST_CASE("downscale 128 to 48 preserves mass") {
  DeterministicRng rng(5);
  const auto src = testing::random_counts(rng, 2, 128, 128);
  const auto out = downscale_frames(src, 48, 48);
  CHECK(out.height() == 48);
  CHECK(out.width() == 48);
  CHECK(out.sum() == src.sum());
  // lambda = 0.375: source (127, 127) lands at (47, 47), (2, 2) at (0, 0).
  FrameTensor single(1, 2, 128, 128);
  single.at(0, 1, 127, 2) = 1.0f;
  const auto moved = downscale_frames(single, 48, 48);
  CHECK(moved.at(0, 1, 47, 0) == 1.0f);
}

TEST_CASE("downscale identity and errors") {
  DeterministicRng rng(6);
  const auto src = testing::random_counts(rng, 2, 48, 48);
  CHECK(downscale_frames(src, 48, 48) == src);
  CHECK_THROWS_WITH_AS(downscale_frames(FrameTensor(1, 2, 128, 96), 48, 48), "non-uniform scale unsupported", Error);
  CHECK_THROWS_AS(downscale_frames(src, 64, 64), Error);
}
