#pragma once

#include <stdexcept>
#include <string>

namespace cubics {

// Iteration/continuation did not converge, or precision was exhausted.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A geometric decision (side of a curve, root matching) stayed ambiguous
// after the retry strategy.
struct geometry_error : std::runtime_error {
  explicit geometry_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cubics
