#pragma once

#include <stdexcept>
#include <string>

namespace hypwidth {

inline constexpr const char* kVersion = "0.1.0";

// Input outside the mathematical domain of an operation (non-positive length, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Structurally invalid input (inconsistent pants graph, broken mesh, ...).
class StructureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A required certificate (systole, completeness, ...) failed or is inconclusive.
// Carries the witnessing values in the message.
class CertificateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An iterative solver failed to converge; message carries the last residual.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace hypwidth
