#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include "evz/codec.hpp"
#include "evz/event.hpp"
#include "helpers.hpp"

#ifndef EVZ_CLI_PATH
#error "EVZ_CLI_PATH must point at the evz executable"
#endif

namespace fs = std::filesystem;

namespace {

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(EVZ_CLI_PATH) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli end to end") {
  testing::TempDir dir("cli");
  const fs::path log = dir.path() / "log.txt";
  const std::string d = dir.path().string();

  REQUIRE(run("synth --classes 3 --per-class 4 --size 48x48 --bins 8 --seed 1 --out " + d + "/data", log) == 0);
  CHECK(evz::load_manifest(dir.path() / "data" / "manifest.txt").entries.size() == 12);

  const auto first = evz::load_manifest(dir.path() / "data" / "manifest.txt").entries[0].path;
  REQUIRE(run("rasterize --bins 8 --size 24x24 " + d + "/data/" + first + " " + d + "/one.evzf", log) == 0);
  const auto one = evz::load_evzf(dir.path() / "one.evzf");
  CHECK(one.frames.height() == 24);
  CHECK(one.frames.bins() == 8);

  REQUIRE(run("augment --manifest " + d +
                  "/data/manifest.txt --strategy eventzoom --mixnum 1 --lambda-min 0.5 --lambda-max 1.5 "
                  "--anchor center --seed 3 --workers 2 --out " + d + "/aug",
              log) == 0);
  const auto out = evz::load_manifest(dir.path() / "aug" / "manifest.txt");
  CHECK(out.entries.size() == 12);

  REQUIRE(run("stats --manifest " + d + "/aug/manifest.txt --bins 5", log) == 0);
  CHECK(evz::read_text_file(log).find('\t') != std::string::npos);

  const auto sample = (dir.path() / "aug" / out.entries[0].path).string();
  const auto other = (dir.path() / "aug" / out.entries[1].path).string();
  REQUIRE(run("viz " + sample + " --out " + d + "/viz --format pgm --compare " + other, log) == 0);
  CHECK(fs::exists(dir.path() / "viz" / "t0_c0.pgm"));
  CHECK(fs::exists(dir.path() / "viz" / "t7_c1.pgm"));
  CHECK(fs::exists(dir.path() / "viz" / "strip_c0.pgm"));

  CHECK(run("bench --strategy eventzoom --iterations 0", log) == 0);
  CHECK(run("bench --strategy mixup --iterations 3", log) == 0);
}

TEST_CASE("cli viz of an all-zero tensor is black") {
  testing::TempDir dir("cli_viz");
  evz::write_file(dir.path() / "zero.evzf", evz::write_evzf(evz::FrameTensor(2, 2, 3, 4)));
  REQUIRE(run((dir.path() / "zero.evzf").string() + " --out " + (dir.path() / "v").string(),
              dir.path() / "log.txt") == 2);  // missing subcommand
  REQUIRE(run("viz " + (dir.path() / "zero.evzf").string() + " --out " + (dir.path() / "v").string(),
              dir.path() / "log.txt") == 0);
  CHECK(evz::read_text_file(dir.path() / "v" / "t1_c1.pgm") == "P2\n4 3\n255\n0 0 0 0\n0 0 0 0\n0 0 0 0\n");
}

TEST_CASE("cli usage errors exit 2, runtime errors exit 1") {
  testing::TempDir dir("cli_err");
  const fs::path log = dir.path() / "log.txt";
  const std::string d = dir.path().string();
  REQUIRE(run("synth --classes 2 --per-class 2 --seed 1 --out " + d + "/data", log) == 0);
  const std::string m = " --manifest " + d + "/data/manifest.txt --out " + d + "/aug";
  CHECK(run("augment --strategy zoomy" + m, log) == 2);
  CHECK(run("augment --lambda-min 2 --lambda-max 1" + m, log) == 2);
  CHECK(run("augment --lambda-min 0 --lambda-max 1" + m, log) == 2);
  CHECK(run("augment --lambda-min -1 --lambda-max 1" + m, log) == 2);
  CHECK(run("augment --anchor middle" + m, log) == 2);
  CHECK(run("bench --strategy nope --iterations 1", log) == 2);
  CHECK(run("frobnicate", log) == 2);
  CHECK(run("augment --manifest " + d + "/missing.txt --out " + d + "/aug2", log) == 1);
  CHECK(evz::read_text_file(log).find("missing.txt") != std::string::npos);
  CHECK(run("rasterize " + d + "/nothing.evt " + d + "/x.evzf", log) == 1);
}
