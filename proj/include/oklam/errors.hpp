#pragma once

#include <stdexcept>
#include <string>

namespace oklam {

// Bad input: violated invariant, malformed pattern, off-simplex point, ...
// The CLI maps this to exit code 2.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A required computation failed to converge. CLI exit code 3.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oklam
