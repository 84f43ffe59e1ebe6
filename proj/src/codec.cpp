#include "evz/codec.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <iterator>
#include <set>

#include <fmt/format.h>

namespace evz {
namespace {

constexpr std::uint8_t kEvtMagic[4] = {0x45, 0x56, 0x5A, 0x31};
constexpr std::uint8_t kEvzfMagic[4] = {0x45, 0x56, 0x5A, 0x46};

class Writer {
 public:
  explicit Writer(std::size_t reserve) { out_.reserve(reserve); }

  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

  Bytes take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  Bytes out_;
};

// Bounds-checked little-endian reader; `short_message` is thrown on underrun.
class Reader {
 public:
  Reader(std::span<const std::uint8_t> in, const char* short_message) : in_(in), short_(short_message) {}

  std::size_t remaining() const noexcept { return in_.size() - pos_; }

  void need(std::size_t n) const {
    if (remaining() < n) throw Error(short_);
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  float f32() { return std::bit_cast<float>(u32()); }

 private:
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  std::span<const std::uint8_t> in_;
  const char* short_;
  std::size_t pos_ = 0;
};

bool has_magic(std::span<const std::uint8_t> bytes, const std::uint8_t (&magic)[4]) {
  return bytes.size() >= 4 && std::equal(std::begin(magic), std::end(magic), bytes.begin());
}

template <typename Int>
bool parse_int(std::string_view field, Int& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Lines without their terminators; a trailing newline does not produce an empty line.
std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = end + 1;
  }
  return out;
}

}  // namespace

Bytes write_evt(const EventStream& s) {
  Writer w(kEvtHeaderSize + s.events.size() * kEvtRecordSize);
  w.bytes(kEvtMagic);
  w.u16(s.width);
  w.u16(s.height);
  w.u32(s.duration);
  w.u64(s.events.size());
  for (const Event& e : s.events) {
    w.u32(e.t);
    w.u16(e.x);
    w.u16(e.y);
    w.u8(static_cast<std::uint8_t>(e.polarity));
  }
  return w.take();
}

EventStream read_evt(std::span<const std::uint8_t> bytes) {
  if (!has_magic(bytes, kEvtMagic)) throw Error("not an EVT1 file");
  Reader r(bytes.subspan(4), "unexpected end of file");
  EventStream s;
  s.width = r.u16();
  s.height = r.u16();
  s.duration = r.u32();
  const std::uint64_t count = r.u64();
  if (count > r.remaining() / kEvtRecordSize) throw Error("unexpected end of file");
  s.events.resize(count);
  for (Event& e : s.events) {
    e.t = r.u32();
    e.x = r.u16();
    e.y = r.u16();
    e.polarity = static_cast<std::int8_t>(r.u8());
    if (e.polarity != 1 && e.polarity != -1) throw Error("corrupt record");
  }
  if (r.remaining() != 0) throw Error("trailing bytes after last record");
  return s;
}

std::string write_csv(const EventStream& s) {
  std::string out = "t,x,y,p\n";
  out.reserve(out.size() + s.events.size() * 16);
  for (const Event& e : s.events) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{}\n", e.t, e.x, e.y, static_cast<int>(e.polarity));
  }
  return out;
}

EventStream read_csv(std::string_view text, std::uint16_t width, std::uint16_t height, std::uint32_t duration) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "t,x,y,p") throw Error("parse error at line 1");
  EventStream s{width, height, duration, {}};
  s.events.reserve(lines.size() - 1);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto fields = split(lines[k], ',');
    Event e;
    int polarity = 0;
    if (fields.size() != 4 || !parse_int(fields[0], e.t) || !parse_int(fields[1], e.x) ||
        !parse_int(fields[2], e.y) || !parse_int(fields[3], polarity) || (polarity != 1 && polarity != -1)) {
      throw Error(fmt::format("parse error at line {}", k + 1));
    }
    e.polarity = static_cast<std::int8_t>(polarity);
    s.events.push_back(e);
  }
  return s;
}

Bytes write_evzf(const FrameTensor& frames, const SoftLabelTrack* labels) {
  constexpr int kMax = 65535;
  if (frames.bins() > kMax || frames.channels() > kMax || frames.height() > kMax || frames.width() > kMax) {
    throw Error("dimension too large");
  }
  if (labels != nullptr) {
    if (labels->num_classes > kMax) throw Error("dimension too large");
    if (labels->per_step.size() != static_cast<std::size_t>(frames.bins())) {
      throw Error("label track length does not match tensor bins");
    }
    if (labels->averaged.size() != labels->num_classes) throw Error("label track width mismatch");
    for (const auto& step : labels->per_step) {
      if (step.size() != labels->num_classes) throw Error("label track width mismatch");
    }
  }
  std::size_t total = kEvzfHeaderSize + frames.size() * 4;
  if (labels != nullptr) total += 2 + (labels->per_step.size() + 1) * labels->num_classes * 4;
  Writer w(total);
  w.bytes(kEvzfMagic);
  w.u16(static_cast<std::uint16_t>(frames.bins()));
  w.u16(static_cast<std::uint16_t>(frames.channels()));
  w.u16(static_cast<std::uint16_t>(frames.height()));
  w.u16(static_cast<std::uint16_t>(frames.width()));
  w.u8(labels != nullptr ? 1 : 0);
  for (float v : frames.values()) w.f32(v);
  if (labels != nullptr) {
    w.u16(static_cast<std::uint16_t>(labels->num_classes));
    for (const auto& step : labels->per_step) {
      for (double v : step) w.f32(static_cast<float>(v));
    }
    for (double v : labels->averaged) w.f32(static_cast<float>(v));
  }
  return w.take();
}

FrameFile read_evzf(std::span<const std::uint8_t> bytes) {
  if (!has_magic(bytes, kEvzfMagic)) throw Error("not an EVZF file");
  Reader r(bytes.subspan(4), "truncated tensor");
  const int bins = r.u16();
  const int channels = r.u16();
  const int height = r.u16();
  const int width = r.u16();
  const std::uint8_t has_labels = r.u8();
  if (has_labels > 1) throw Error("corrupt header");
  FrameFile file{FrameTensor(bins, channels, height, width), std::nullopt};
  r.need(file.frames.size() * 4);
  for (float& v : file.frames.values()) v = r.f32();
  if (has_labels == 1) {
    SoftLabelTrack track;
    track.num_classes = r.u16();
    r.need((static_cast<std::size_t>(bins) + 1) * track.num_classes * 4);
    track.per_step.assign(static_cast<std::size_t>(bins), Distribution(track.num_classes));
    for (auto& step : track.per_step) {
      for (double& v : step) v = r.f32();
    }
    track.averaged.resize(track.num_classes);
    for (double& v : track.averaged) v = r.f32();
    file.labels = std::move(track);
  }
  if (r.remaining() != 0) throw Error("trailing bytes after tensor");
  return file;
}

std::string_view to_string(EntryKind kind) noexcept { return kind == EntryKind::Events ? "events" : "frames"; }

std::string write_manifest(const DatasetManifest& m) {
  std::set<std::string_view> seen;
  std::string out = fmt::format("n={}\n", m.num_classes);
  for (const auto& e : m.entries) {
    if (e.class_id >= m.num_classes) throw Error("class out of range");
    if (!seen.insert(e.path).second) throw Error("duplicate entry");
    fmt::format_to(std::back_inserter(out), "{}\t{}\t{}\n", e.class_id, to_string(e.kind), e.path);
  }
  return out;
}

DatasetManifest read_manifest(std::string_view text) {
  const auto lines = lines_of(text);
  DatasetManifest m;
  if (lines.empty() || !lines[0].starts_with("n=") || !parse_int(lines[0].substr(2), m.num_classes)) {
    throw Error("parse error at line 1");
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const std::size_t tab1 = lines[k].find('\t');
    const std::size_t tab2 = tab1 == std::string_view::npos ? tab1 : lines[k].find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) throw Error(fmt::format("parse error at line {}", k + 1));
    ManifestEntry e;
    const std::string_view kind = lines[k].substr(tab1 + 1, tab2 - tab1 - 1);
    e.path = std::string(lines[k].substr(tab2 + 1));
    if (!parse_int(lines[k].substr(0, tab1), e.class_id) || e.path.empty()) {
      throw Error(fmt::format("parse error at line {}", k + 1));
    }
    if (kind == "events") {
      e.kind = EntryKind::Events;
    } else if (kind == "frames") {
      e.kind = EntryKind::Frames;
    } else {
      throw Error(fmt::format("parse error at line {}", k + 1));
    }
    if (e.class_id >= m.num_classes) throw Error("class out of range");
    if (!seen.insert(e.path).second) throw Error("duplicate entry");
    m.entries.push_back(std::move(e));
  }
  return m;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("{}: cannot open for reading", path.string()));
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(fmt::format("{}: read failed", path.string()));
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("{}: cannot open for writing", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(fmt::format("{}: write failed", path.string()));
}

std::string read_text_file(const std::filesystem::path& path) {
  const Bytes b = read_file(path);
  return std::string(b.begin(), b.end());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

namespace {
template <typename F>
auto with_path(const std::filesystem::path& path, F&& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.starts_with(path.string())) throw;
    throw Error(fmt::format("{}: {}", path.string(), what));
  }
}
}  // namespace

EventStream load_evt(const std::filesystem::path& path) {
  return with_path(path, [&] { return read_evt(read_file(path)); });
}

FrameFile load_evzf(const std::filesystem::path& path) {
  return with_path(path, [&] { return read_evzf(read_file(path)); });
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  return with_path(path, [&] { return read_manifest(read_text_file(path)); });
}

}  // namespace evz
