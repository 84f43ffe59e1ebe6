#pragma once

// End-to-end acceptance checks with their pinned tolerances and time budgets.
// Shared by the acceptance test binary and `evz verify`.

#include <filesystem>
#include <string>
#include <vector>

#include "evz/config.hpp"
#include "evz/zoom.hpp"

namespace evz::verify {

struct CheckResult {
  std::string name;
  bool acceptance = true;  // false for supplementary invariant checks
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0 when the check has no time budget
};

struct Options {
  /// Scratch space for dataset round trips; a temporary directory when empty.
  std::filesystem::path scratch_dir;
  bool include_invariants = true;
};

std::vector<CheckResult> run_all(const Options& options = {});

/// "PASS name (1.23 s) detail" style lines.
std::string format_result(const CheckResult& r);

// Individual checks, exposed for targeted tests.
CheckResult check_interpolation();
CheckResult check_label_simplex();
CheckResult check_coverage_oracle();
CheckResult check_domain_equivalence();
CheckResult check_ablation_equivalence();
CheckResult check_determinism(const std::filesystem::path& scratch);
CheckResult check_identity_cases();
CheckResult check_mixing_strength();
CheckResult check_codecs();
CheckResult check_benchmark();

CheckResult check_extent_soundness();
CheckResult check_kernel_equivalence();
CheckResult check_draw_count_audit();

/// Mask pixel count of one placement computed without the closed-form
/// extent: enumerates every source coordinate's destination, derives the
/// offset from that bounding box, and marks frame pixels inside it.
long long brute_force_mask_pixels(int src_width, int src_height, int width, int height, double scale, Point2 anchor,
                                  AnchorMode mode);

/// Mean donor weight (1 - base-class mass of the averaged label) over
/// `draws` single-donor eventzoom applications on H x W frames.
double monte_carlo_donor_weight(double lambda_min, double lambda_max, std::size_t draws, std::uint64_t seed);

/// True when both trees contain the same relative file paths with identical bytes.
bool same_tree(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace evz::verify
