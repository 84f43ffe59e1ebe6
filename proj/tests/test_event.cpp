#include <doctest.h>

#include <algorithm>

#include "evz/event.hpp"
#include "evz/rng.hpp"
#include "helpers.hpp"

using namespace evz;

TEST_CASE("validate_stream on empty stream") {
  const EventStream s{48, 48, 1000, {}};
  CHECK(validate_stream(s).empty());
}

TEST_CASE("validate_stream reports x out of bounds") {
  const EventStream s{48, 48, 1000, {{5, 50, 0, 1}}};
  const auto v = validate_stream(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::XOutOfBounds);
  CHECK(v[0].index == 0);
  CHECK(v[0].message == "x out of bounds at index 0");
}

TEST_CASE("validate_stream reports unsorted") {
  const EventStream s{48, 48, 1000, {{7, 1, 1, 1}, {3, 1, 1, 1}}};
  const auto v = validate_stream(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].message == "unsorted at index 1");
}

TEST_CASE("validate_stream: one violation per kind, first index") {
  const EventStream s{4, 4, 100, {{1, 9, 0, 1}, {0, 9, 9, 0}, {200, 0, 9, 1}}};
  const auto v = validate_stream(s);
  CHECK(v.size() == 5);
  for (const auto& item : v) {
    if (item.kind == ViolationKind::XOutOfBounds) CHECK(item.index == 0);
    if (item.kind == ViolationKind::YOutOfBounds) CHECK(item.index == 1);
    if (item.kind == ViolationKind::BadPolarity) CHECK(item.index == 1);
    if (item.kind == ViolationKind::Unsorted) CHECK(item.index == 1);
    if (item.kind == ViolationKind::TimeOutOfRange) CHECK(item.index == 2);
  }
}

TEST_CASE("sort_events orders by time") {
  const EventStream s{48, 48, 1000, {{7, 1, 1, 1}, {3, 2, 2, -1}}};
  const auto sorted = sort_events(s);
  REQUIRE(sorted.events.size() == 2);
  CHECK(sorted.events[0].t == 3);
  CHECK(sorted.events[1].t == 7);
}

TEST_CASE("sort_events on sorted input is identity and idempotent") {
  DeterministicRng rng(5);
  const auto s = testing::random_stream(rng, 500, 48, 48, 1000);
  CHECK(sort_events(s) == s);
  CHECK(sort_events(sort_events(s)) == sort_events(s));
}

TEST_CASE("sort_events is stable against an index-tagged reference") {
  DeterministicRng rng(17);
  EventStream s{64, 64, 50, {}};
  for (int i = 0; i < 2000; ++i) {
    // Few distinct timestamps so ties are common; x/y encode the original index.
    s.events.push_back({static_cast<std::uint32_t>(rng.uniform_index(10)), static_cast<std::uint16_t>(i % 64),
                        static_cast<std::uint16_t>(i / 64), 1});
  }
  std::vector<std::pair<std::uint32_t, int>> ref;
  for (int i = 0; i < 2000; ++i) ref.emplace_back(s.events[i].t, i);
  std::sort(ref.begin(), ref.end());  // (t, index) order is the stable order
  const auto sorted = sort_events(s);
  for (int i = 0; i < 2000; ++i) {
    const int original = sorted.events[i].y * 64 + sorted.events[i].x;
    CHECK(original == ref[i].second);
  }
  for (const auto& v : validate_stream(sorted)) CHECK(v.kind != ViolationKind::Unsorted);
}

TEST_CASE("sort_events rejects invalid events") {
  CHECK_THROWS_WITH_AS(sort_events(EventStream{4, 4, 10, {{1, 4, 0, 1}}}), "invalid event", Error);
  CHECK_THROWS_WITH_AS(sort_events(EventStream{4, 4, 10, {{1, 0, 0, 0}}}), "invalid event", Error);
}

TEST_CASE("polarity channel mapping") {
  CHECK(polarity_channel(1) == 0);
  CHECK(polarity_channel(-1) == 1);
}

TEST_CASE("FrameTensor layout") {
  FrameTensor f(2, 2, 3, 4);
  CHECK(f.size() == 48);
  CHECK(f.step_size() == 24);
  f.at(1, 1, 2, 3) = 5.0f;
  CHECK(f.values().back() == 5.0f);
  CHECK(f.step(1)[23] == 5.0f);
  CHECK(f.sum() == 5.0);
  CHECK_THROWS_AS(FrameTensor(0, 2, 3, 4), Error);
}

TEST_CASE("labels and rects") {
  const auto y = one_hot(1, 3);
  CHECK(y == Distribution{0.0, 1.0, 0.0});
  CHECK(is_distribution(y));
  CHECK_FALSE(is_distribution(Distribution{0.5, 0.6}));
  CHECK_FALSE(is_distribution(Distribution{1.5, -0.5}));
  CHECK_THROWS_AS(one_hot(3, 3), Error);

  auto track = SoftLabelTrack::constant(y, 4);
  CHECK(track.per_step.size() == 4);
  CHECK(track.averaged == y);
  track.per_step[0] = {1.0, 0.0, 0.0};
  track.recompute_average();
  CHECK(track.averaged[0] == doctest::Approx(0.25));
  CHECK(track.averaged[1] == doctest::Approx(0.75));

  const Rect r{-2, 40, 10, 20};
  CHECK(r.clipped(48, 48) == Rect{0, 40, 8, 8});
  CHECK(Rect{50, 0, 4, 4}.clipped(48, 48).area() == 0);
  CHECK(r.contains(-2, 40));
  CHECK_FALSE(r.contains(8, 40));
}
