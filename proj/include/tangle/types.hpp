#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tangle {

// Exact nonnegative counts. GMP integers; the nonnegativity is an invariant
// of the producers, not of the type.
using BigCount = mpz_class;
using BigInt = mpz_class;
using Rational = mpq_class;

class TangleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// DP table or brute-force budget exceeded.
class ResourceLimitError : public TangleError {
public:
    using TangleError::TangleError;
};

// An input sequence does not reach an index the computation needs.
class RangeError : public TangleError {
public:
    RangeError(const std::string& what, std::size_t missing_index)
        : TangleError(what), missing_index_(missing_index) {}
    std::size_t missing_index() const noexcept { return missing_index_; }

private:
    std::size_t missing_index_;
};

// Internal consistency failure (non-integral extraction, inexact division).
// Always indicates a bug or a corrupted input, never a user error.
class IntegrityError : public TangleError {
public:
    using TangleError::TangleError;
};

} // namespace tangle
