#pragma once

#include <stdexcept>
#include <string>

namespace mhc {

// Malformed input text (Solomon files, JSON documents). Carries a line number
// when one is known.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
  ParseError(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  int line = -1;
};

// Semantically invalid data: broken instances, structurally malformed
// solutions, capacity-violating trips.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem too large for an exhaustive procedure.
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mhc
