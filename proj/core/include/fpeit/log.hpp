#pragma once

#include <string_view>

namespace fpeit::log {

enum class Level { error, warn, info, debug };

// Reads FPEIT_LOG (error|warn|info|debug); unset or unknown values mean "warn".
Level level_from_env();
void set_level(Level level);

void error(std::string_view message);
void warn(std::string_view message);
void info(std::string_view message);
void debug(std::string_view message);

}  // namespace fpeit::log
