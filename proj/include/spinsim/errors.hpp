#pragma once

#include <stdexcept>
#include <string>

namespace spinsim {

/// Bad user input: malformed files, mismatched sizes, out-of-range indices.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: non-convergence, inconsistent intermediate results.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource cap was exceeded (e.g. dense realization size).
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinsim
