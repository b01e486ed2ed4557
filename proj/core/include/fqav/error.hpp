#pragma once

#include <stdexcept>
#include <string>

namespace fqav {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller: bad field, non-endomorphism, runaway
// closure and the like.
class MathError : public Error {
 public:
  using Error::Error;
};

// A statement that is a theorem failed to verify on concrete data. This is
// always a bug in the library, never a user error.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fqav
