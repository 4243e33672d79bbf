#pragma once

#include <stdexcept>
#include <string>

namespace dcm {

// Validation failures (bad shapes, tags, preconditions) use
// std::invalid_argument. Numeric failures discovered mid-computation
// (singular required inverses, unsatisfied dispersion, degeneracies)
// use NumericError so callers can map them to a distinct exit path.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateWaveError : NumericError {
  explicit DegenerateWaveError(const std::string& what) : NumericError(what) {}
};

}  // namespace dcm
