#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <tangle/types.hpp>

namespace tangle::linalg {

using IntMatrix = std::vector<std::vector<BigInt>>;
using ModMatrix = std::vector<std::vector<std::uint64_t>>;

// 2^61 - 1.
inline constexpr std::uint64_t screening_prime = 0x1FFFFFFFFFFFFFFFull;

struct ModRank {
    std::size_t rank = 0;
    // Indices of a maximal set of rows that are independent mod p, in the
    // order they were used as pivots.
    std::vector<std::size_t> pivot_rows;
};

// Gaussian elimination over Z/pZ. Entries must already be reduced mod p.
ModRank rank_mod_p(ModMatrix rows, std::size_t num_cols, std::uint64_t p = screening_prime);

// Row echelon form by fraction-free (Bareiss) elimination. Every division is
// exact; all entries stay integral.
struct Echelon {
    IntMatrix rows;
    std::vector<std::size_t> pivot_cols; // pivot column of row i
};

Echelon bareiss_echelon(IntMatrix m, std::size_t num_cols);

// A primitive integer vector x with m x = 0, nonzero, taken from the
// smallest-index free column (set to 1, other free columns 0, then cleared
// to coprime integers). nullopt if m has full column rank.
std::optional<std::vector<BigInt>> nullspace_vector(IntMatrix m, std::size_t num_cols);

} // namespace tangle::linalg
