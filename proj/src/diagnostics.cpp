#include "fuzzynv/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace fuzzynv {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& current_handler() {
  static WarningHandler h = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return h;
}

}  // namespace

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (current_handler()) current_handler()(message);
}

ScopedWarningHandler::ScopedWarningHandler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  previous_ = std::exchange(current_handler(), std::move(handler));
}

ScopedWarningHandler::~ScopedWarningHandler() {
  std::lock_guard lock(handler_mutex());
  current_handler() = std::move(previous_);
}

}  // namespace fuzzynv
