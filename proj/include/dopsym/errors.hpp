#pragma once

#include <stdexcept>
#include <string>

namespace dopsym {

/// Base of every error raised by the library. All errors are hard failures:
/// nothing is coerced or truncated silently.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different base geometries (line vs circle).
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// A functional that only exists on the circle was requested on the line.
class UnsupportedFunctional : public Error {
 public:
  using Error::Error;
};

class WeightMismatch : public Error {
 public:
  using Error::Error;
};

/// A named map was requested at (k, λ, μ) where it is not defined.
class InapplicableSymmetry : public Error {
 public:
  using Error::Error;
};

class NotInKernel : public Error {
 public:
  using Error::Error;
};

/// The image of a basis element leaves the truncated space.
class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

class SpanNotClosed : public Error {
 public:
  using Error::Error;
};

/// Catalog generators do not span the computed symmetry algebra.
class SpanMismatch : public Error {
 public:
  using Error::Error;
};

/// Two independent derivations of the same quantity disagree.
class OracleDisagreement : public Error {
 public:
  using Error::Error;
};

}  // namespace dopsym
