#pragma once

#include <stdexcept>
#include <string>

namespace tauforge {

// Violated structural invariant: malformed value handed between modules,
// mismatched component counts, non-square matrices, failed exact division.
struct StructuralError : std::logic_error {
  explicit StructuralError(const std::string& msg) : std::logic_error(msg) {}
};

// Rejected user-supplied input: bad spec files, bad CLI arguments, inputs a
// verifier refuses to process (zero tau, charge-inhomogeneous tau, ...).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tauforge
