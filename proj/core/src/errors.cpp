#include "deontic/errors.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <utility>

namespace deontic {

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler() {
  static WarningHandler h = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return h;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

GrammarError::GrammarError(std::string production, const std::string& message)
    : Error("grammar violation in <" + production + ">: " + message),
      production_(std::move(production)) {}

void set_warning_handler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  handler() = std::move(h);
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler()) handler()(message);
}

std::size_t resource_limit() {
  if (const char* env = std::getenv("DEONTIC_MC_RESOURCE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10000;
}

}  // namespace deontic
