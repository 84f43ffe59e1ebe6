#pragma once

// Core event-camera domain types: events, streams, frame tensors, soft labels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace evz {

/// Raised by every library operation that rejects its input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Event {
  std::uint32_t t = 0;  // microseconds
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  std::int8_t polarity = 1;  // +1 or -1

  friend bool operator==(const Event&, const Event&) = default;
};

struct EventStream {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint32_t duration = 0;  // microseconds; every event has t < duration
  std::vector<Event> events;

  friend bool operator==(const EventStream&, const EventStream&) = default;
};

enum class ViolationKind { XOutOfBounds, YOutOfBounds, BadPolarity, Unsorted, TimeOutOfRange };

struct Violation {
  ViolationKind kind;
  std::size_t index;
  std::string message;
};

/// Checks every stream invariant. One violation per kind, naming the first
/// offending event index. Never throws.
std::vector<Violation> validate_stream(const EventStream& s);

/// Stable sort by timestamp. Throws Error("invalid event") when an event is
/// out of bounds or has a polarity other than +/-1.
EventStream sort_events(EventStream s);

/// Polarity to channel index: +1 -> 0, -1 -> 1.
constexpr int polarity_channel(std::int8_t polarity) noexcept { return polarity > 0 ? 0 : 1; }

/// Dense T x C x H x W accumulation, row-major.
class FrameTensor {
 public:
  FrameTensor() = default;
  FrameTensor(int bins, int channels, int height, int width);

  int bins() const noexcept { return bins_; }
  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }

  std::size_t plane_size() const noexcept { return static_cast<std::size_t>(height_) * width_; }
  std::size_t step_size() const noexcept { return plane_size() * channels_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool same_shape(const FrameTensor& other) const noexcept {
    return bins_ == other.bins_ && channels_ == other.channels_ && height_ == other.height_ &&
           width_ == other.width_;
  }

  float& at(int t, int c, int y, int x) noexcept { return values_[index(t, c, y, x)]; }
  float at(int t, int c, int y, int x) const noexcept { return values_[index(t, c, y, x)]; }

  std::span<float> values() noexcept { return values_; }
  std::span<const float> values() const noexcept { return values_; }

  /// C x H x W slice for one time bin.
  std::span<float> step(int t) noexcept { return std::span<float>(values_).subspan(t * step_size(), step_size()); }
  std::span<const float> step(int t) const noexcept {
    return std::span<const float>(values_).subspan(t * step_size(), step_size());
  }

  /// Sum of all values, accumulated in double.
  double sum() const;

  friend bool operator==(const FrameTensor&, const FrameTensor&) = default;

 private:
  std::size_t index(int t, int c, int y, int x) const noexcept {
    return ((static_cast<std::size_t>(t) * channels_ + c) * height_ + y) * width_ + x;
  }

  int bins_ = 0;
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> values_;
};

using Distribution = std::vector<double>;

Distribution one_hot(std::size_t cls, std::size_t num_classes);

/// True when entries are >= 0 and sum to 1 within tol.
bool is_distribution(std::span<const double> d, double tol = 1e-9);

struct SoftLabelTrack {
  std::size_t num_classes = 0;
  std::vector<Distribution> per_step;
  Distribution averaged;

  /// Same label at every one of `bins` steps.
  static SoftLabelTrack constant(const Distribution& label, int bins);

  /// Recomputes `averaged` as the entrywise mean of `per_step`.
  void recompute_average();

  friend bool operator==(const SoftLabelTrack&, const SoftLabelTrack&) = default;
};

/// Axis-aligned pixel rectangle [x0, x0 + w) x [y0, y0 + h).
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;

  long long area() const noexcept { return static_cast<long long>(w) * h; }
  bool contains(int x, int y) const noexcept { return x >= x0 && x < x0 + w && y >= y0 && y < y0 + h; }

  /// Intersection with [0, width) x [0, height); empty results have w = h = 0.
  Rect clipped(int width, int height) const noexcept;

  friend bool operator==(const Rect&, const Rect&) = default;
};

}  // namespace evz
