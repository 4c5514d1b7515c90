#pragma once

#include <stdexcept>
#include <string>

namespace flatchain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands carry different coefficient groups.
class DescriptorMismatch : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible chain or ambient dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad descriptor, schema violation, out-of-range parameter.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant does not hold (overlapping cells, broken identity).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A chain is not transverse to the requested plane. Retrying with a
/// perturbed plane or offset is expected to succeed.
class TransversalityError : public Error {
 public:
  using Error::Error;
};

/// The requested computation is outside the supported family.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace flatchain
