#pragma once

#include <stdexcept>

namespace qpart {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotPositiveSemidefinite : Error { using Error::Error; };
struct InvalidPair : Error { using Error::Error; };
struct NotSorted : Error { using Error::Error; };
struct NotXForm : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

// Violated invariant of a validated state (message names the invariant).
struct InvalidState : Error { using Error::Error; };

// Dimensionless-time conversion requested for a cavity photon number that
// has no such convention.
struct UnsupportedTauConvention : Error { using Error::Error; };

// Malformed input document.
struct ParseError : Error { using Error::Error; };

}  // namespace qpart
