#pragma once

#include <stdexcept>
#include <string>

namespace gmacwt {

/// A requested computation exceeds a hard size cap (joint-decoding
/// candidates, enumeration state count, vertex enumeration dimension).
/// The CLI maps this to exit code 3.
struct SizeCapError : std::runtime_error {
  explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

/// A feasibility problem has no solution (point outside the region,
/// margin too large, ...). The CLI maps this to exit code 2.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gmacwt
