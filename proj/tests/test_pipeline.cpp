#include <doctest.h>

#include <cmath>

#include "evz/codec.hpp"
#include "evz/pipeline.hpp"
#include "evz/raster.hpp"
#include "evz/synth.hpp"
#include "evz/verify.hpp"
#include "evz/zoom.hpp"
#include "helpers.hpp"

using namespace evz;

namespace {

struct Fixture {
  testing::TempDir dir{"pipeline"};
  DatasetManifest manifest;
  Fixture(std::size_t per_class = 10, std::uint64_t seed = 3) {
    manifest = gen_dataset(3, per_class, dir.path() / "data", seed, Geometry{});
  }
  std::filesystem::path data() const { return dir.path() / "data"; }
};

}  // namespace

TEST_CASE("rng reference vector and child streams") {
  DeterministicRng rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFull);
  CHECK(child_rng(5, 0).state() == 0x16B1CBA95FC60262ull);
  CHECK(child_rng(5, 1).state() == 0xC097314D939736F8ull);
  DeterministicRng a = child_rng(9, 4), b = child_rng(9, 4);
  for (int k = 0; k < 10; ++k) CHECK(a.next_u64() == b.next_u64());
  CHECK(child_rng(9, 4).next_u64() != child_rng(9, 5).next_u64());
  DeterministicRng u(1);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("mixnum 0 outputs are rasterized bases with one-hot labels") {
  Fixture fx(2);
  AugConfig cfg;
  cfg.mixnum = 0;
  const auto out = fx.dir.path() / "out";
  const auto report = augment_dataset(fx.manifest, fx.data(), cfg, out);
  CHECK(report.failures == 0);
  REQUIRE(report.output.entries.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto file = load_evzf(out / report.output.entries[i].path);
    const auto& entry = fx.manifest.entries[i];
    CHECK(file.frames == rasterize(load_evt(fx.data() / entry.path), 8, 48, 48));
    REQUIRE(file.labels.has_value());
    CHECK(file.labels->averaged == one_hot(entry.class_id, 3));
    CHECK(report.output.entries[i].class_id == entry.class_id);
    CHECK(report.output.entries[i].kind == EntryKind::Frames);
  }
  const auto h = label_weight_histogram(report.output, out, 10);
  CHECK(h.counts[0] == 6);
  CHECK(h.total == 6);
  CHECK(h.mean == 0.0);
}

TEST_CASE("worker count does not change the output") {
  Fixture fx(6);
  AugConfig cfg;
  cfg.mixnum = 2;
  cfg.master_seed = 21;
  for (int w : {1, 2, 8}) {
    augment_dataset(fx.manifest, fx.data(), cfg, fx.dir.path() / ("w" + std::to_string(w)), {w, std::nullopt});
  }
  CHECK(verify::same_tree(fx.dir.path() / "w1", fx.dir.path() / "w2"));
  CHECK(verify::same_tree(fx.dir.path() / "w1", fx.dir.path() / "w8"));
}

TEST_CASE("donor weights match a single-threaded replay, seed 3") {
  Fixture fx(34, 3);  // 102 samples
  AugConfig cfg;
  cfg.master_seed = 3;
  const auto out = fx.dir.path() / "out";
  const auto report = augment_dataset(fx.manifest, fx.data(), cfg, out, {4, std::nullopt});
  const auto weights = donor_weights(report.output, out);
  REQUIRE(weights.size() == 102);

  // Replay: rasterize every sample, redraw donors and trajectories from the
  // child stream and apply the zoom directly.
  std::vector<FrameTensor> frames;
  for (const auto& e : fx.manifest.entries) frames.push_back(rasterize(load_evt(fx.data() / e.path), 8, 48, 48));
  for (std::size_t i = 0; i < frames.size(); ++i) {
    DeterministicRng rng = child_rng(3, i);
    const ZoomParams p = sample_zoom_params(rng, cfg, frames.size(), i);
    const FrameDonor donors[1] = {{&frames[p.donor_index], one_hot(fx.manifest.entries[p.donor_index].class_id, 3)}};
    const ZoomParams ps[1] = {p};
    const auto y = one_hot(fx.manifest.entries[i].class_id, 3);
    const auto r = eventzoom_frames(frames[i], y, donors, ps, cfg.anchor_mode);
    const double w = 1.0 - r.labels.averaged[fx.manifest.entries[i].class_id];
    // Written labels are f32.
    CHECK(weights[i] == doctest::Approx(w).epsilon(1e-6));
    CHECK(load_evzf(out / report.output.entries[i].path).frames == r.frames);
  }
}

TEST_CASE("augment_sample draw count is mixnum * 7 plus re-draws") {
  Fixture fx(2);
  AugConfig cfg;
  cfg.mixnum = 3;
  const auto data = load_dataset(fx.manifest, fx.data(), cfg);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto s = augment_sample(data, i, cfg);
    CHECK(s.rng_draws == 3 * 7 + s.collisions);
    CHECK(s.donors.size() == 3);
    for (auto d : s.donors) CHECK(d != i);
  }
}

TEST_CASE("strategies through the pipeline") {
  Fixture fx(2);
  for (const char* token : {"mixup", "cutmix", "eventmix", "eventdrop", "ablation:C_PS_PP", "ablation:RS_RP"}) {
    AugConfig cfg;
    cfg.strategy = *parse_strategy(token);
    const auto out = fx.dir.path() / (std::string("s_") + (token[0] == 'a' ? token + 9 : token));
    const auto report = augment_dataset(fx.manifest, fx.data(), cfg, out);
    CHECK(report.failures == 0);
    for (const auto& e : report.output.entries) {
      const auto file = load_evzf(out / e.path);
      REQUIRE(file.labels.has_value());
      CHECK(is_distribution(file.labels->averaged, 1e-6));
    }
  }
}

TEST_CASE("averaged label mode copies the average into every step") {
  Fixture fx(2);
  AugConfig cfg;
  cfg.label_mode = LabelMode::Averaged;
  const auto data = load_dataset(fx.manifest, fx.data(), cfg);
  const auto s = augment_sample(data, 0, cfg);
  for (const auto& step : s.labels.per_step) CHECK(step == s.labels.averaged);
}

TEST_CASE("unreadable entries are recorded and the run continues") {
  Fixture fx(2);
  std::filesystem::remove(fx.data() / fx.manifest.entries[0].path);
  AugConfig cfg;
  cfg.mixnum = 0;
  const auto out = fx.dir.path() / "out";
  const auto report = augment_dataset(fx.manifest, fx.data(), cfg, out);
  CHECK(report.failures == 1);
  CHECK(report.output.entries.size() == 5);
  CHECK(std::filesystem::exists(out / "errors.tsv"));

  DatasetManifest broken{2, {{"missing.evt", 0, EntryKind::Events}}};
  CHECK_THROWS_WITH_AS(augment_dataset(broken, fx.data(), cfg, fx.dir.path() / "none"), "all samples failed", Error);
}

TEST_CASE("donor cache round trip") {
  Fixture fx(2);
  AugConfig cfg;
  const auto cache = fx.dir.path() / "cache";
  const auto first = load_dataset(fx.manifest, fx.data(), cfg, 1, cache);
  CHECK(std::filesystem::exists(cache));
  const auto second = load_dataset(fx.manifest, fx.data(), cfg, 1, cache);
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(*first.frames[i] == *second.frames[i]);
}

TEST_CASE("histogram bookkeeping") {
  const std::vector<double> w{0.0, 0.05, 0.15, 0.5, 0.99, 1.0};
  const auto h = histogram_of(w, 10);
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == w.size());
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[9] == 2);
  CHECK(h.cumulative.back() == 1.0);
  CHECK(h.mean == doctest::Approx((0.05 + 0.15 + 0.5 + 0.99 + 1.0) / 6));
  const auto text = format_histogram(h);
  CHECK(text.find('\t') != std::string::npos);
  CHECK_THROWS_AS(histogram_of(w, 0), Error);
}

TEST_CASE("stats over frames without labels") {
  testing::TempDir dir("nolabel");
  write_file(dir.path() / "a.evzf", write_evzf(FrameTensor(8, 2, 48, 48)));
  DatasetManifest m{2, {{"a.evzf", 0, EntryKind::Frames}}};
  try {
    donor_weights(m, dir.path());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("no label track") != std::string::npos);
  }
}

TEST_CASE("wider, larger scale range mixes more") {
  const double wide = verify::monte_carlo_donor_weight(0.5, 1.5, 10000, 1);
  const double narrow = verify::monte_carlo_donor_weight(0.2, 0.6, 10000, 1);
  CHECK(wide - narrow > 0.1);
}

TEST_CASE("bench rows") {
  const Strategy strategies[2] = {*parse_strategy("eventzoom"), *parse_strategy("mixup")};
  CHECK(run_bench(strategies, 0, 1, 2).empty());
  const auto rows = run_bench(strategies, 5, 1, 2);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].strategy == "eventzoom");
  CHECK(rows[0].mode == "single");
  CHECK(rows[1].mode == "parallel[2]");
  CHECK(rows[2].strategy == "mixup");
  CHECK(rows[0].iterations == 5);
  CHECK(format_bench(rows).find("eventzoom") != std::string::npos);
}
