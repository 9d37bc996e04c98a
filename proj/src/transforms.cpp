#include <tangle/transforms.hpp>

#include <stdexcept>

namespace tangle {

std::string to_string(SequenceLabel label)
{
    switch (label) {
    case SequenceLabel::f:
        return "f";
    case SequenceLabel::t_tilde:
        return "t_tilde";
    case SequenceLabel::t:
        return "t";
    }
    return "?";
}

SequenceLabel parse_sequence_label(std::string_view text)
{
    if (text == "f") {
        return SequenceLabel::f;
    }
    if (text == "t_tilde" || text == "tt") {
        return SequenceLabel::t_tilde;
    }
    if (text == "t") {
        return SequenceLabel::t;
    }
    throw std::invalid_argument("unknown sequence label '" + std::string(text) + "'");
}

template <SequenceLabel L>
CountSequence<L>::CountSequence(int k_, std::vector<BigCount> values_) : k(k_), values(std::move(values_))
{
    if (k < 2) {
        throw std::invalid_argument("sequence k must be >= 2");
    }
    if (!values.empty() && values[0] != 1) {
        throw std::invalid_argument(to_string(L) + " sequence must start with 1");
    }
    if constexpr (L == SequenceLabel::f) {
        for (std::size_t m = 1; m < values.size(); m += 2) {
            if (sgn(values[m]) != 0) {
                throw std::invalid_argument("f sequence has nonzero odd-index value at m = " + std::to_string(m));
            }
        }
    }
}

template struct CountSequence<SequenceLabel::f>;
template struct CountSequence<SequenceLabel::t_tilde>;
template struct CountSequence<SequenceLabel::t>;

const std::vector<BigCount>& PascalTriangle::row(int n)
{
    if (n < 0) {
        throw std::invalid_argument("binomial row index must be >= 0");
    }
    while (rows_.size() <= static_cast<std::size_t>(n)) {
        const auto& prev = rows_.back();
        std::vector<BigCount> next(prev.size() + 1);
        next.front() = 1;
        next.back() = 1;
        for (std::size_t i = 1; i < prev.size(); ++i) {
            next[i] = prev[i - 1] + prev[i];
        }
        rows_.push_back(std::move(next));
    }
    return rows_[static_cast<std::size_t>(n)];
}

std::vector<BigCount> binomial_row(int n)
{
    PascalTriangle pascal;
    return pascal.row(n);
}

TildeSequence tilde_from_f(const MatchingSequence& f, int n_max)
{
    if (n_max < 0) {
        throw std::invalid_argument("n_max must be >= 0");
    }
    const auto needed = 2 * static_cast<std::size_t>(n_max);
    if (f.values.size() <= needed) {
        throw RangeError("f_" + std::to_string(f.k) + " sequence is missing index " + std::to_string(f.values.size()) +
                             " (need 0.." + std::to_string(needed) + ")",
                         f.values.size());
    }
    PascalTriangle pascal;
    std::vector<BigCount> out(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const auto& row = pascal.row(n);
        BigCount sum;
        for (int i = 0; i <= n; ++i) {
            sum += row[static_cast<std::size_t>(i)] * f.values[static_cast<std::size_t>(2 * n - i)];
        }
        out[static_cast<std::size_t>(n)] = std::move(sum);
    }
    return TildeSequence(f.k, std::move(out));
}

TangledSequence t_from_tilde(const TildeSequence& tilde, int n_max)
{
    if (n_max < 0) {
        throw std::invalid_argument("n_max must be >= 0");
    }
    if (tilde.values.size() <= static_cast<std::size_t>(n_max)) {
        throw RangeError("t_tilde_" + std::to_string(tilde.k) + " sequence is missing index " +
                             std::to_string(tilde.values.size()) + " (need 0.." + std::to_string(n_max) + ")",
                         tilde.values.size());
    }
    std::span<const BigCount> prefix(tilde.values.data(), static_cast<std::size_t>(n_max) + 1);
    return TangledSequence(tilde.k, binomial_transform(prefix));
}

std::vector<BigCount> binomial_transform(std::span<const BigCount> a)
{
    PascalTriangle pascal;
    std::vector<BigCount> b(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        const auto& row = pascal.row(static_cast<int>(n));
        for (std::size_t i = 0; i <= n; ++i) {
            b[n] += row[i] * a[n - i];
        }
    }
    return b;
}

std::vector<BigCount> inverse_binomial(std::span<const BigCount> b)
{
    PascalTriangle pascal;
    std::vector<BigCount> a(b.size());
    for (std::size_t n = 0; n < b.size(); ++n) {
        const auto& row = pascal.row(static_cast<int>(n));
        for (std::size_t i = 0; i <= n; ++i) {
            if (i % 2 == 0) {
                a[n] += row[i] * b[n - i];
            } else {
                a[n] -= row[i] * b[n - i];
            }
        }
    }
    return a;
}

TildeSequence inverse_binomial(const TangledSequence& t)
{
    return TildeSequence(t.k, inverse_binomial(std::span<const BigCount>(t.values)));
}

} // namespace tangle
