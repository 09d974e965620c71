#pragma once

#include <stdexcept>
#include <string>

namespace orbitforge {

/// Raised when an input violates a mathematical invariant (bad partition,
/// Gerstenhaber failure, composite modulus, ...). The CLI maps it to exit 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orbitforge
