#pragma once

#include <stdexcept>
#include <string>

namespace qtnc {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed object, virtual-object or NSet document.
struct parse_error : error {
  using error::error;
};

/// A query between two endpoints for which no decision rule is implemented.
struct undecided_pair : error {
  using error::error;
};

/// Exhaustive enumeration requested over a universe that is too large.
struct size_guard_error : error {
  using error::error;
};

/// An operation was called outside its domain (e.g. a slice exponential
/// whose factors do not map into the base).
struct precondition_error : error {
  using error::error;
};

}  // namespace qtnc
