#pragma once

#include <stdexcept>
#include <string>

namespace phoc {

// Base for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: config strings, corpus records, run/qrels lines.
struct ParseError : Error {
  using Error::Error;
};

// Signature would not fit a 64-bit word.
struct CapacityError : Error {
  using Error::Error;
};

// Persisted index cannot be loaded (magic/version/consistency).
struct LoadError : Error {
  using Error::Error;
};

}  // namespace phoc
