// errors.hpp — exception types shared across the library.
#pragma once

#include <stdexcept>

namespace qca {

// Thrown when a computed quantity violates a numeric invariant beyond its
// guard band, e.g. a probability far outside [0, 1] or a state whose sector
// weight has leaked away.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qca
