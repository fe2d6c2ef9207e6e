#pragma once

#include <stdexcept>
#include <string>

namespace ostbc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Precondition or input validation failure (bad symbol vector, unknown
/// label, dimension mismatch, duplicate catalog key, ...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Numeric failure: quadrature non-convergence, domain violations in
/// special functions, divergent bounds.
struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

} // namespace ostbc
