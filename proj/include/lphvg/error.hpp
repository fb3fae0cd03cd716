#pragma once

#include <stdexcept>
#include <string>

namespace lphvg {

// Bad input or violated precondition. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical or runtime failure (divergent orbit, I/O). The CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lphvg
