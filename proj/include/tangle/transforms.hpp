#pragma once

// Binomial transforms linking matchings to tangled diagrams:
//   t~_k(n) = sum_i C(n,i) f_k(2n-i)
//   t_k(n)  = sum_i C(n,i) t~_k(n-i)

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <tangle/types.hpp>

namespace tangle {

enum class SequenceLabel { f, t_tilde, t };

std::string to_string(SequenceLabel label);
// Accepts "f", "t_tilde" (or "tt"), "t". Throws std::invalid_argument otherwise.
SequenceLabel parse_sequence_label(std::string_view text);

// A counting sequence tagged with what it counts. f is indexed by unit steps
// m, t~ and t by vertices n. The label is part of the type so that feeding
// the wrong sequence into a transform does not compile.
template <SequenceLabel L>
struct CountSequence {
    static constexpr SequenceLabel label = L;

    int k = 2;
    std::vector<BigCount> values;

    CountSequence() = default;
    // Throws std::invalid_argument when values[0] != 1, k < 2, or (for f) an
    // odd-index value is nonzero.
    CountSequence(int k_, std::vector<BigCount> values_);

    std::size_t size() const noexcept { return values.size(); }
    const BigCount& operator[](std::size_t i) const { return values.at(i); }

    bool operator==(const CountSequence&) const = default;
};

using MatchingSequence = CountSequence<SequenceLabel::f>;
using TildeSequence = CountSequence<SequenceLabel::t_tilde>;
using TangledSequence = CountSequence<SequenceLabel::t>;

extern template struct CountSequence<SequenceLabel::f>;
extern template struct CountSequence<SequenceLabel::t_tilde>;
extern template struct CountSequence<SequenceLabel::t>;

// Cached Pascal triangle; rows are built on demand by Pascal's rule.
class PascalTriangle {
public:
    const std::vector<BigCount>& row(int n);

private:
    std::vector<std::vector<BigCount>> rows_{{BigCount(1)}};
};

std::vector<BigCount> binomial_row(int n);

// Requires f to cover indices 0..2*n_max; throws RangeError naming the first
// missing index otherwise.
TildeSequence tilde_from_f(const MatchingSequence& f, int n_max);

// Requires tilde to cover 0..n_max.
TangledSequence t_from_tilde(const TildeSequence& tilde, int n_max);

// b(n) = sum_i C(n,i) a(n-i) and its inverse a(n) = sum_i (-1)^i C(n,i) b(n-i).
std::vector<BigCount> binomial_transform(std::span<const BigCount> a);
std::vector<BigCount> inverse_binomial(std::span<const BigCount> b);

// Undoes t_from_tilde on the full range of `t`.
TildeSequence inverse_binomial(const TangledSequence& t);

} // namespace tangle
