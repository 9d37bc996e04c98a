#include <tangle/rational_series.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tangle {

RationalSeries::RationalSeries(int order)
{
    if (order < 0) {
        throw std::invalid_argument("series truncation order must be >= 0");
    }
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

RationalSeries::RationalSeries(std::vector<Rational> coeffs, int order) : coeffs_(std::move(coeffs))
{
    if (order < 0) {
        throw std::invalid_argument("series truncation order must be >= 0");
    }
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
    for (auto& c : coeffs_) {
        c.canonicalize();
    }
}

RationalSeries RationalSeries::constant(const Rational& c, int order)
{
    return monomial(c, 0, order);
}

RationalSeries RationalSeries::monomial(const Rational& c, int power, int order)
{
    if (power < 0) {
        throw std::invalid_argument("monomial power must be >= 0");
    }
    RationalSeries s(order);
    if (power <= order) {
        s.coeffs_[static_cast<std::size_t>(power)] = c;
        s.coeffs_[static_cast<std::size_t>(power)].canonicalize();
    }
    return s;
}

RationalSeries RationalSeries::from_integers(std::span<const BigInt> coeffs, int order)
{
    RationalSeries s(order);
    const auto n = std::min(coeffs.size(), s.coeffs_.size());
    for (std::size_t j = 0; j < n; ++j) {
        s.coeffs_[j] = Rational(coeffs[j]);
    }
    return s;
}

int RationalSeries::valuation() const noexcept
{
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (sgn(coeffs_[j]) != 0) {
            return static_cast<int>(j);
        }
    }
    return order() + 1;
}

RationalSeries RationalSeries::truncated(int new_order) const
{
    return RationalSeries(std::vector<Rational>(coeffs_.begin(),
                                                coeffs_.begin() + std::min<std::ptrdiff_t>(
                                                                      static_cast<std::ptrdiff_t>(coeffs_.size()),
                                                                      static_cast<std::ptrdiff_t>(new_order) + 1)),
                          new_order);
}

std::string RationalSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (sgn(coeffs_[j]) == 0) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << coeffs_[j].get_str();
        if (j > 0) {
            os << "*z^" << j;
        }
    }
    if (first) {
        os << '0';
    }
    os << " + O(z^" << coeffs_.size() << ')';
    return os.str();
}

RationalSeries RationalSeries::operator-() const
{
    RationalSeries r(*this);
    for (auto& c : r.coeffs_) {
        c = -c;
    }
    return r;
}

RationalSeries& RationalSeries::operator+=(const RationalSeries& other)
{
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        coeffs_[j] += other.coeffs_[j];
    }
    return *this;
}

RationalSeries& RationalSeries::operator-=(const RationalSeries& other)
{
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        coeffs_[j] -= other.coeffs_[j];
    }
    return *this;
}

RationalSeries& RationalSeries::operator*=(const RationalSeries& other)
{
    *this = *this * other;
    return *this;
}

RationalSeries& RationalSeries::operator*=(const Rational& c)
{
    for (auto& x : coeffs_) {
        x *= c;
    }
    return *this;
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b)
{
    const int order = std::min(a.order(), b.order());
    RationalSeries r(order);
    const int va = a.valuation();
    const int vb = b.valuation();
    Rational term;
    for (int i = va; i <= order; ++i) {
        const auto& ai = a.coeffs_[static_cast<std::size_t>(i)];
        if (sgn(ai) == 0) {
            continue;
        }
        for (int j = vb; i + j <= order; ++j) {
            const auto& bj = b.coeffs_[static_cast<std::size_t>(j)];
            if (sgn(bj) == 0) {
                continue;
            }
            mpq_mul(term.get_mpq_t(), ai.get_mpq_t(), bj.get_mpq_t());
            r.coeffs_[static_cast<std::size_t>(i + j)] += term;
        }
    }
    return r;
}

RationalSeries series_add(const RationalSeries& a, const RationalSeries& b)
{
    return a + b;
}

RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b)
{
    return a * b;
}

RationalSeries series_scale(const RationalSeries& a, const Rational& c)
{
    return a * c;
}

RationalSeries series_inverse(const RationalSeries& a)
{
    if (sgn(a[0]) == 0) {
        throw NonUnitError("series has zero constant term and is not invertible");
    }
    const int order = a.order();
    std::vector<Rational> b(static_cast<std::size_t>(order) + 1);
    const Rational inv0 = 1 / a[0];
    b[0] = inv0;
    for (int n = 1; n <= order; ++n) {
        Rational acc;
        for (int i = 1; i <= n; ++i) {
            const auto& ai = a[static_cast<std::size_t>(i)];
            if (sgn(ai) != 0) {
                acc += ai * b[static_cast<std::size_t>(n - i)];
            }
        }
        b[static_cast<std::size_t>(n)] = -acc * inv0;
    }
    return RationalSeries(std::move(b), order);
}

RationalSeries series_compose(const RationalSeries& outer, const RationalSeries& inner)
{
    if (sgn(inner[0]) != 0) {
        throw CompositionError("inner series of a composition must have zero constant term");
    }
    const int order = std::min(outer.order(), inner.order());
    RationalSeries result = RationalSeries::constant(outer[static_cast<std::size_t>(order)], order);
    const RationalSeries z = inner.truncated(order);
    for (int j = order - 1; j >= 0; --j) {
        result = result * z;
        result += RationalSeries::constant(outer[static_cast<std::size_t>(j)], order);
    }
    return result;
}

} // namespace tangle
