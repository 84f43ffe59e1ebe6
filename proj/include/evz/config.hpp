#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace evz {

enum class AnchorMode { Center, TopLeft };

enum class LabelMode { PerStep, Averaged };

/// How a per-step parameter evolves over the T bins.
enum class ParamMode {
  Progressive,    // two endpoint draws, linear in between
  RandomPerStep,  // one independent draw per bin
  Fixed,          // one draw, held for every bin
};

enum class EmbedMode {
  ZoomSplat,    // donor scaled into the mask
  CropReplace,  // donor's same-coordinate content copied into the mask, unscaled
};

struct AblationVariant {
  std::string_view name;
  ParamMode scale_mode;
  ParamMode position_mode;
  EmbedMode embed_mode;
};

/// The eight spatial-integrity / temporal-continuity ablation presets.
inline constexpr std::array<AblationVariant, 8> kAblationVariants{{
    {"PS_PP", ParamMode::Progressive, ParamMode::Progressive, EmbedMode::ZoomSplat},
    {"RS_RP", ParamMode::RandomPerStep, ParamMode::RandomPerStep, EmbedMode::ZoomSplat},
    {"RS_FP", ParamMode::Fixed, ParamMode::RandomPerStep, EmbedMode::ZoomSplat},
    {"FS_RP", ParamMode::RandomPerStep, ParamMode::Fixed, EmbedMode::ZoomSplat},
    {"FS_FP", ParamMode::Fixed, ParamMode::Fixed, EmbedMode::ZoomSplat},
    {"C_RS_FP", ParamMode::RandomPerStep, ParamMode::Fixed, EmbedMode::CropReplace},
    {"C_RP_FS", ParamMode::Fixed, ParamMode::RandomPerStep, EmbedMode::CropReplace},
    {"C_PS_PP", ParamMode::Progressive, ParamMode::Progressive, EmbedMode::CropReplace},
}};

std::optional<AblationVariant> find_ablation_variant(std::string_view name);

enum class StrategyKind { EventZoom, Mixup, CutMix, EventMix, EventDrop, Ablation };

struct Strategy {
  StrategyKind kind = StrategyKind::EventZoom;
  AblationVariant variant = kAblationVariants[0];  // meaningful for Ablation only

  /// Stable CLI token: eventzoom, mixup, cutmix, eventmix, eventdrop, ablation:<NAME>.
  std::string token() const;
};

/// Parses a CLI token; nullopt when unknown.
std::optional<Strategy> parse_strategy(std::string_view token);

struct AugConfig {
  std::size_t mixnum = 1;
  double lambda_min = 0.5;
  double lambda_max = 1.5;
  int bins = 8;
  int channels = 2;
  int height = 48;
  int width = 48;
  AnchorMode anchor_mode = AnchorMode::Center;
  Strategy strategy{};
  std::uint64_t master_seed = 0;
  LabelMode label_mode = LabelMode::PerStep;

  double mixup_alpha = 1.0;  // Beta(alpha, alpha) mixing weight
  double drop_ratio = 0.1;   // eventdrop

  /// Throws Error on lambda_min <= 0, lambda_min > lambda_max, non-positive
  /// geometry or channels != 2.
  void validate() const;
};

}  // namespace evz
