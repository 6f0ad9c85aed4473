#pragma once

#include <stdexcept>
#include <string>

namespace nucleeg {

// Error families mirror the CLI exit codes: bad flags or unresolvable
// names, malformed or inconsistent data, and filesystem failures.

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nucleeg
