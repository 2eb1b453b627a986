#include "fpeit/log.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace fpeit::log {
namespace {

spdlog::level::level_enum to_spdlog(Level level) {
  switch (level) {
    case Level::error: return spdlog::level::err;
    case Level::warn: return spdlog::level::warn;
    case Level::info: return spdlog::level::info;
    case Level::debug: return spdlog::level::debug;
  }
  return spdlog::level::warn;
}

spdlog::logger& logger() {
  static std::once_flag once;
  static std::shared_ptr<spdlog::logger> instance;
  std::call_once(once, [] {
    instance = spdlog::stderr_color_mt("fpeit");
    instance->set_pattern("[%l] %v");
    instance->set_level(to_spdlog(level_from_env()));
  });
  return *instance;
}

}  // namespace

Level level_from_env() {
  const char* raw = std::getenv("FPEIT_LOG");
  if (raw == nullptr) return Level::warn;
  const std::string value(raw);
  if (value == "error") return Level::error;
  if (value == "info") return Level::info;
  if (value == "debug") return Level::debug;
  return Level::warn;
}

void set_level(Level level) { logger().set_level(to_spdlog(level)); }

void error(std::string_view message) { logger().error(message); }
void warn(std::string_view message) { logger().warn(message); }
void info(std::string_view message) { logger().info(message); }
void debug(std::string_view message) { logger().debug(message); }

}  // namespace fpeit::log
