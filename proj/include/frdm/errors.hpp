#pragma once

#include <stdexcept>
#include <string>

namespace frdm {

/// Requested object exceeds a hard dimension cap (sector cap, Fock cap, ...).
struct dimension_error : std::runtime_error {
  explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

/// A vector failed a required normalization (or trace-normalization) check.
struct normalization_error : std::runtime_error {
  explicit normalization_error(const std::string& what) : std::runtime_error(what) {}
};

/// M or N parity requirement violated (pairing-state constructor).
struct parity_error : std::runtime_error {
  explicit parity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix expected to be Hermitian within tolerance was not.
struct hermiticity_error : std::runtime_error {
  explicit hermiticity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace frdm
