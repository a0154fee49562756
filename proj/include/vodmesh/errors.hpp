#pragma once

#include <stdexcept>
#include <string>

namespace vodmesh {

// Precondition violated by a caller-supplied value.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Rejected configuration. `line` is 1-based when the value came from a file,
// 0 otherwise.
struct InvalidConfig : std::runtime_error {
  InvalidConfig(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line(line) {}
  int line;
};

// Enumeration oracle asked to go beyond its size cap.
struct SizeLimitError : std::length_error {
  using std::length_error::length_error;
};

struct InvalidTopology : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace vodmesh
