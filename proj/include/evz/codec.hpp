#pragma once

// Byte-exact file formats. All multi-byte fields are little-endian.
//
//   EVT1  magic "EVZ1" (45 56 5A 31)
//         u16 width, u16 height, u32 duration_us, u64 count
//         count x { u32 t, u16 x, u16 y, i8 polarity }   (9 bytes, packed)
//
//   EVZF  magic "EVZF" (45 56 5A 46)
//         u16 T, u16 C, u16 H, u16 W, u8 has_labels
//         T*C*H*W f32 values, row-major (T, C, H, W)
//         if has_labels: u16 n, T*n f32 per-step labels, n f32 averaged label
//
//   CSV   "t,x,y,p" header, one decimal event per line
//
//   manifest  "n=<num_classes>" then "<class_id>\t<kind>\t<path>" per entry

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evz/event.hpp"

namespace evz {

using Bytes = std::vector<std::uint8_t>;

constexpr std::size_t kEvtHeaderSize = 20;  // 4 + 2 + 2 + 4 + 8
constexpr std::size_t kEvtRecordSize = 9;
constexpr std::size_t kEvzfHeaderSize = 13;

Bytes write_evt(const EventStream& s);
EventStream read_evt(std::span<const std::uint8_t> bytes);

std::string write_csv(const EventStream& s);
/// CSV carries no geometry; the caller supplies it.
EventStream read_csv(std::string_view text, std::uint16_t width, std::uint16_t height, std::uint32_t duration);

struct FrameFile {
  FrameTensor frames;
  std::optional<SoftLabelTrack> labels;
};

Bytes write_evzf(const FrameTensor& frames, const SoftLabelTrack* labels = nullptr);
FrameFile read_evzf(std::span<const std::uint8_t> bytes);

enum class EntryKind { Events, Frames };

std::string_view to_string(EntryKind kind) noexcept;

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  std::size_t class_id = 0;
  EntryKind kind = EntryKind::Events;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
  std::size_t num_classes = 0;
  std::vector<ManifestEntry> entries;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

std::string write_manifest(const DatasetManifest& m);
DatasetManifest read_manifest(std::string_view text);

// File helpers; errors carry the offending path.
Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

EventStream load_evt(const std::filesystem::path& path);
FrameFile load_evzf(const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace evz
