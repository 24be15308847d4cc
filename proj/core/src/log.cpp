#include "vap/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace vap::log {

namespace {

Level parse_env() {
  const char* env = std::getenv("VAP_LOG_LEVEL");
  if (!env) return Level::Warn;
  if (std::strcmp(env, "error") == 0) return Level::Error;
  if (std::strcmp(env, "warn") == 0) return Level::Warn;
  if (std::strcmp(env, "info") == 0) return Level::Info;
  if (std::strcmp(env, "debug") == 0) return Level::Debug;
  return Level::Warn;
}

Level g_level = parse_env();

const char* tag(Level lvl) {
  switch (lvl) {
    case Level::Error: return "error";
    case Level::Warn: return "warn";
    case Level::Info: return "info";
    case Level::Debug: return "debug";
  }
  return "?";
}

}  // namespace

Level level() { return g_level; }
void set_level(Level lvl) { g_level = lvl; }

void write(Level lvl, const std::string& msg) {
  if (static_cast<int>(lvl) > static_cast<int>(g_level)) return;
  std::fprintf(stderr, "[vap %s] %s\n", tag(lvl), msg.c_str());
}

}  // namespace vap::log
