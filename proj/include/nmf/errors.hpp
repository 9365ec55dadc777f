#pragma once

#include <stdexcept>
#include <string>

namespace nmf {

// Bad input data or configuration: schema violations, unknown names,
// out-of-range values. Exit code 1 at the CLI boundary.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text while parsing a file; the message carries the file,
// line and (where known) byte position of the offending token.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Filesystem-level failure (missing file, unwritable path). Exit code 2
// at the CLI boundary.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nmf
