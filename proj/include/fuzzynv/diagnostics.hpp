#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace fuzzynv {

using WarningHandler = std::function<void(std::string_view)>;

/// Emits a warning through the installed handler (stderr by default).
void warn(std::string_view message);

/// Installs `handler` for the lifetime of this object, restoring the previous
/// one afterwards. Not intended for concurrent installation from several threads.
class ScopedWarningHandler {
 public:
  explicit ScopedWarningHandler(WarningHandler handler);
  ~ScopedWarningHandler();
  ScopedWarningHandler(const ScopedWarningHandler&) = delete;
  ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace fuzzynv
