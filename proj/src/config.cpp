#include "evz/config.hpp"

#include <fmt/format.h>

#include "evz/event.hpp"

namespace evz {

std::optional<AblationVariant> find_ablation_variant(std::string_view name) {
  for (const auto& v : kAblationVariants) {
    if (v.name == name) return v;
  }
  return std::nullopt;
}

std::string Strategy::token() const {
  switch (kind) {
    case StrategyKind::EventZoom: return "eventzoom";
    case StrategyKind::Mixup: return "mixup";
    case StrategyKind::CutMix: return "cutmix";
    case StrategyKind::EventMix: return "eventmix";
    case StrategyKind::EventDrop: return "eventdrop";
    case StrategyKind::Ablation: return fmt::format("ablation:{}", variant.name);
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view token) {
  if (token == "eventzoom") return Strategy{StrategyKind::EventZoom};
  if (token == "mixup") return Strategy{StrategyKind::Mixup};
  if (token == "cutmix") return Strategy{StrategyKind::CutMix};
  if (token == "eventmix") return Strategy{StrategyKind::EventMix};
  if (token == "eventdrop") return Strategy{StrategyKind::EventDrop};
  constexpr std::string_view prefix = "ablation:";
  if (token.starts_with(prefix)) {
    if (auto v = find_ablation_variant(token.substr(prefix.size()))) return Strategy{StrategyKind::Ablation, *v};
  }
  return std::nullopt;
}

void AugConfig::validate() const {
  if (!(lambda_min > 0.0)) throw Error("lambda_min must be positive");
  if (lambda_min > lambda_max) throw Error("lambda_min must not exceed lambda_max");
  if (bins < 1 || height < 1 || width < 1) throw Error("geometry must be positive");
  if (channels != 2) throw Error("channels must be 2");
  if (!(mixup_alpha > 0.0)) throw Error("mixup alpha must be positive");
  if (!(drop_ratio >= 0.0 && drop_ratio <= 1.0)) throw Error("drop ratio out of range");
}

}  // namespace evz
