#pragma once

#include <atomic>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "evz/event.hpp"
#include "evz/rng.hpp"

namespace testing {

// Removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("evz_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Small non-negative integer counts, like rasterized events.
inline evz::FrameTensor random_counts(evz::DeterministicRng& rng, int bins, int height, int width, int max = 4) {
  evz::FrameTensor f(bins, 2, height, width);
  for (float& v : f.values()) v = static_cast<float>(rng.uniform_index(max + 1));
  return f;
}

inline evz::EventStream random_stream(evz::DeterministicRng& rng, std::size_t count, std::uint16_t width,
                                      std::uint16_t height, std::uint32_t duration) {
  evz::EventStream s{width, height, duration, {}};
  s.events.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    s.events.push_back({static_cast<std::uint32_t>(rng.uniform_index(duration)),
                        static_cast<std::uint16_t>(rng.uniform_index(width)),
                        static_cast<std::uint16_t>(rng.uniform_index(height)),
                        static_cast<std::int8_t>(rng.uniform01() < 0.5 ? 1 : -1)});
  }
  return evz::sort_events(std::move(s));
}

}  // namespace testing
