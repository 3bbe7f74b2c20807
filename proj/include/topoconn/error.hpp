#pragma once

#include <stdexcept>
#include <string>

namespace topoconn {

// All library failures carry a stable machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, std::string location = {})
      : std::runtime_error(message), code_(std::move(code)), location_(std::move(location)) {}

  const std::string& code() const { return code_; }
  const std::string& location() const { return location_; }

 private:
  std::string code_;
  std::string location_;
};

[[noreturn]] void fail(const std::string& code, const std::string& message,
                       const std::string& location = {});

}  // namespace topoconn
