#include "evz/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace evz {

void init_logging() {
  auto logger = spdlog::stderr_color_mt("evz");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");

  const char* env = std::getenv("EVZ_LOG");
  const std::string_view level = env != nullptr ? env : "error";
  if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::err);
  }
}

}  // namespace evz
