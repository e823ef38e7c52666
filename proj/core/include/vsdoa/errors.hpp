// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vsdoa {

/// A synthesis or method specification violates its preconditions
/// (frequency above Nyquist, nonpositive duration, inverted band, ...).
class InvalidSpecError : public std::invalid_argument {
 public:
  explicit InvalidSpecError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input carries too few samples for the requested operation.
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

/// Band selection or standardization left no usable frequency bins.
class EmptyBandError : public std::runtime_error {
 public:
  explicit EmptyBandError(const std::string& what) : std::runtime_error(what) {}
};

/// Weight vector and bin set have mismatched lengths.
class AlignmentError : public std::invalid_argument {
 public:
  explicit AlignmentError(const std::string& what) : std::invalid_argument(what) {}
};

/// An aggregate was requested over an empty collection.
class EmptyInputError : public std::invalid_argument {
 public:
  explicit EmptyInputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A recording, manifest, or config file could not be read or parsed.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vsdoa
