#pragma once

#include <stdexcept>
#include <string>

namespace qgt {

struct QgtError : std::runtime_error {
  std::string code;
  QgtError(std::string code_, const std::string& msg)
      : std::runtime_error(code_ + ": " + msg), code(std::move(code_)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw QgtError(code, msg);
}

}  // namespace qgt
