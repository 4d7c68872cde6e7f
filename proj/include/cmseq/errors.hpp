#pragma once

#include <stdexcept>
#include <string>

namespace cmseq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A covariance (or a block of one) failed the Cholesky pivot test.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// Time index, block index or index set out of range / overlapping.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its mathematical domain (e.g. |rho| >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operands with incompatible dimensions.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed input file or document.
class FormatError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_shape(const std::string& what);

}  // namespace cmseq
