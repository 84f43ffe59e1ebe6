#pragma once

// Plain (P2) grayscale PGM rendering of frame tensors.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "evz/event.hpp"

namespace evz {

/// Plain PGM of a height x width plane, min-max normalised to 0..255. A
/// constant plane renders black.
std::string plane_to_pgm(std::span<const float> plane, int height, int width);

/// Writes t<k>_c<j>.pgm for every bin and channel. Returns the paths written.
std::vector<std::filesystem::path> write_frame_pgms(const FrameTensor& frames, const std::filesystem::path& out_dir);

/// strip_c<j>.pgm per channel: bins left to right, `top` above `bottom`.
std::vector<std::filesystem::path> write_compare_strips(const FrameTensor& top, const FrameTensor& bottom,
                                                        const std::filesystem::path& out_dir);

}  // namespace evz
