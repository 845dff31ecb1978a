// Exception hierarchy shared by all qhc modules.
#pragma once

#include <stdexcept>
#include <string>

namespace qhc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands built over different variable tables.
struct ContextError : Error {
  using Error::Error;
};

// Exact division left a remainder.
struct DivisibilityError : Error {
  using Error::Error;
};

// A negative exponent landed on a variable that is not Laurent.
struct LaurentError : Error {
  using Error::Error;
};

struct ArgumentError : Error {
  using Error::Error;
};

// Malformed quiver: bad ids, self loops, oriented 2-cycles, zero dimensions.
struct QuiverError : Error {
  using Error::Error;
};

// Unparseable input file or polynomial text.
struct InputError : Error {
  using Error::Error;
};

// Gröbner / enumeration resource cap hit. Never silently truncated.
struct BudgetExceeded : Error {
  using Error::Error;
};

// An identity that must hold by construction failed; signals a bug.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace qhc
