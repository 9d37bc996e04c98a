#pragma once

#include <span>
#include <string>
#include <vector>

#include <tangle/types.hpp>

namespace tangle {

class NonUnitError : public TangleError {
public:
    using TangleError::TangleError;
};

class CompositionError : public TangleError {
public:
    using TangleError::TangleError;
};

// Power series in z with exact rational coefficients, truncated modulo
// z^{order+1}. Coefficients are always in lowest terms; binary operations
// truncate to the smaller of the two orders.
class RationalSeries {
public:
    explicit RationalSeries(int order = 0);
    // Pads with zeros or drops terms above `order`.
    RationalSeries(std::vector<Rational> coeffs, int order);

    static RationalSeries constant(const Rational& c, int order);
    static RationalSeries monomial(const Rational& c, int power, int order);
    // The identity series z.
    static RationalSeries variable(int order) { return monomial(Rational(1), 1, order); }
    static RationalSeries from_integers(std::span<const BigInt> coeffs, int order);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const Rational> coeffs() const noexcept { return coeffs_; }
    const Rational& operator[](std::size_t j) const { return coeffs_.at(j); }

    // Index of the lowest nonzero coefficient, order()+1 for the zero series.
    int valuation() const noexcept;
    bool is_zero() const noexcept { return valuation() > order(); }

    RationalSeries truncated(int order) const;
    std::string to_string() const;

    RationalSeries operator-() const;
    RationalSeries& operator+=(const RationalSeries& other);
    RationalSeries& operator-=(const RationalSeries& other);
    RationalSeries& operator*=(const RationalSeries& other);
    RationalSeries& operator*=(const Rational& c);

    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
    friend RationalSeries operator*(RationalSeries a, const Rational& c) { return a *= c; }
    friend RationalSeries operator*(const Rational& c, RationalSeries a) { return a *= c; }

    friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

private:
    std::vector<Rational> coeffs_;
};

RationalSeries series_add(const RationalSeries& a, const RationalSeries& b);
RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b);
RationalSeries series_scale(const RationalSeries& a, const Rational& c);

// Throws NonUnitError if a(0) == 0.
RationalSeries series_inverse(const RationalSeries& a);

// outer(inner(z)) by Horner's rule in the truncated ring. Throws
// CompositionError if inner(0) != 0.
RationalSeries series_compose(const RationalSeries& outer, const RationalSeries& inner);

} // namespace tangle
