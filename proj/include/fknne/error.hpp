#pragma once

#include <stdexcept>
#include <string>

namespace fknne {

/// Raised for any input that violates a documented contract: malformed files,
/// out-of-range parameters, schema mismatches. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fknne
