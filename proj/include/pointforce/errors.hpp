#pragma once

#include <stdexcept>
#include <string>

namespace pointforce {

// Invalid parameters or configuration supplied by the caller.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Problems with the data itself: degenerate clouds, coincident points,
// parse failures, mismatched files.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pointforce
