#pragma once
#include <stdexcept>
#include <string>

namespace hfl {

// Input shape problems: non-square where square is required, block size
// mismatches, index out of range.
class DimensionError : public std::invalid_argument {
public:
  explicit DimensionError(const std::string &what) : std::invalid_argument(what) {}
};

// Domain-invariant violations: non-coprime surgery coefficients, asymmetric Y,
// malformed generator terms, documents that fail schema validation.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string &what) : std::invalid_argument(what) {}
};

// Inversion of a matrix with zero determinant.
class SingularMatrixError : public std::domain_error {
public:
  explicit SingularMatrixError(const std::string &what) : std::domain_error(what) {}
};

// A computation refused because it would exceed a configured budget or bound.
// Deliberately distinct from a mathematical "no": callers must not turn this
// into a verdict.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace hfl
