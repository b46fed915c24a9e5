#pragma once

#include <stdexcept>
#include <string>

namespace simplexlab {

// Bad argument, malformed structure or violated precondition.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A size guard refused the request.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace simplexlab
