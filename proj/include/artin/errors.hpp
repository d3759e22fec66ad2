#pragma once

#include <stdexcept>
#include <string>

namespace artin {

/// Base class for every error raised by the library.
class ArtinError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph, word, or coset text.
class ParseError : public ArtinError {
 public:
  using ArtinError::ArtinError;
};

/// An operation was called outside its domain (unknown generator, subset not
/// of finite type, mismatched ambient monoid, bound below input length...).
class DomainError : public ArtinError {
 public:
  using ArtinError::ArtinError;
};

/// A desk-scale limit was hit (class enumeration cap, search radius).
class CapExceeded : public ArtinError {
 public:
  using ArtinError::ArtinError;
};

/// A structural invariant that the theory guarantees failed to hold.
/// Seeing one of these means either a bug or a counterexample.
class InvariantViolation : public ArtinError {
 public:
  using ArtinError::ArtinError;
};

}  // namespace artin
