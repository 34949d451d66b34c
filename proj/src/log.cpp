#include "amlgen/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>

namespace amlgen::log {

Level threshold() {
  static const Level level = [] {
    const char* env = std::getenv("AMLGEN_LOG");
    const std::string v = env ? env : "";
    if (v == "error") return Level::error;
    if (v == "info") return Level::info;
    if (v == "debug") return Level::debug;
    return Level::warn;
  }();
  return level;
}

void write(Level level, std::string_view message) {
  if (static_cast<int>(level) > static_cast<int>(threshold())) return;
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::fprintf(stderr, "[%s] %.*s\n", kNames[static_cast<int>(level)],
               static_cast<int>(message.size()), message.data());
}

}  // namespace amlgen::log
