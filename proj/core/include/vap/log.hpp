#pragma once

#include <string>

namespace vap::log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Global level, initialized once from the VAP_LOG_LEVEL environment
// variable (error|warn|info|debug). Defaults to warn.
Level level();
void set_level(Level lvl);

void write(Level lvl, const std::string& msg);

inline void error(const std::string& msg) { write(Level::Error, msg); }
inline void warn(const std::string& msg) { write(Level::Warn, msg); }
inline void info(const std::string& msg) { write(Level::Info, msg); }
inline void debug(const std::string& msg) { write(Level::Debug, msg); }

}  // namespace vap::log
