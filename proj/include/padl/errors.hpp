#pragma once

#include <stdexcept>
#include <string>

namespace padl {

// Raised when an operation cannot emit a single correct digit at the
// precision it was given.  The CLI maps this to exit code 3.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Domain violations of the underlying formulas (log outside the unit disk,
// non-invertible matrix, weight mismatch, ...).
struct MathDomainError : std::domain_error {
    explicit MathDomainError(const std::string& what) : std::domain_error(what) {}
};

// An internal invariant failed; always a bug report.  CLI exit code 4.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Bad user-supplied configuration.  CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace padl
