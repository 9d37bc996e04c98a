#include <tangle/series_kernel.hpp>

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace tangle {

namespace {

BigInt factorial(int n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

void require_square(const SeriesMatrix& m)
{
    for (const auto& row : m) {
        if (row.size() != m.size()) {
            throw std::invalid_argument("determinant needs a square matrix");
        }
    }
}

int matrix_order(const SeriesMatrix& m)
{
    int order = m.empty() ? 0 : m[0][0].order();
    for (const auto& row : m) {
        for (const auto& s : row) {
            order = std::min(order, s.order());
        }
    }
    return order;
}

RationalSeries cofactor_expand(const SeriesMatrix& m, std::vector<std::size_t>& cols, std::size_t row, int order)
{
    if (row == m.size()) {
        return RationalSeries::constant(Rational(1), order);
    }
    RationalSeries sum(order);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& entry = m[row][cols[c]];
        if (entry.is_zero()) {
            continue;
        }
        const std::size_t col = cols[c];
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(c));
        auto term = entry * cofactor_expand(m, cols, row + 1, order);
        cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(c), col);
        if (c % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

} // namespace

RationalSeries bessel_series(int m, int order)
{
    if (m < 0) {
        throw std::invalid_argument("bessel_series needs m >= 0; use I_{-m} = I_m");
    }
    RationalSeries s(order);
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    for (int j = 0; m + 2 * j <= order; ++j) {
        c[static_cast<std::size_t>(m + 2 * j)] = Rational(BigInt(1), factorial(j) * factorial(m + j));
    }
    return RationalSeries(std::move(c), order);
}

SeriesMatrix bessel_matrix(int k, int order)
{
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2");
    }
    const int dim = k - 1;
    SeriesMatrix m(static_cast<std::size_t>(dim));
    for (int i = 1; i <= dim; ++i) {
        auto& row = m[static_cast<std::size_t>(i - 1)];
        for (int j = 1; j <= dim; ++j) {
            row.push_back(bessel_series(std::abs(i - j), order) - bessel_series(i + j, order));
        }
    }
    return m;
}

RationalSeries determinant_by_cofactors(const SeriesMatrix& m)
{
    require_square(m);
    const int order = matrix_order(m);
    std::vector<std::size_t> cols(m.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        cols[c] = c;
    }
    return cofactor_expand(m, cols, 0, order);
}

RationalSeries determinant(SeriesMatrix m)
{
    require_square(m);
    const int order = matrix_order(m);
    const std::size_t n = m.size();
    if (n == 0) {
        return RationalSeries::constant(Rational(1), order);
    }
    bool negate = false;
    RationalSeries prev_inverse = RationalSeries::constant(Rational(1), order);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].valuation() < m[pivot][c].valuation()) {
                pivot = r;
            }
        }
        if (m[pivot][c].is_zero()) {
            return RationalSeries(order);
        }
        if (m[pivot][c].valuation() > 0) {
            // Dividing by a non-unit would lose precision: expand the trailing
            // minor instead. Entries of the Bareiss working matrix at step c
            // are minors scaled by the previous pivot, so undo that scaling.
            SeriesMatrix minor;
            for (std::size_t r = c; r < n; ++r) {
                minor.emplace_back(m[r].begin() + static_cast<std::ptrdiff_t>(c), m[r].end());
            }
            auto rest = determinant_by_cofactors(minor);
            // Bareiss invariant: det(trailing block) = prev^{n-c-1} * det(original)
            for (std::size_t e = 0; e + 1 < n - c; ++e) {
                rest = rest * prev_inverse;
            }
            return negate ? -rest : rest;
        }
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            negate = !negate;
        }
        const RationalSeries& p = m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            for (std::size_t col = c + 1; col < n; ++col) {
                m[r][col] = (p * m[r][col] - m[r][c] * m[c][col]) * prev_inverse;
            }
        }
        prev_inverse = series_inverse(p);
    }
    auto det = std::move(m[n - 1][n - 1]);
    return negate ? -det : det;
}

std::vector<BigCount> matching_counts_via_determinant(int k, int order)
{
    if (order < 0) {
        throw std::invalid_argument("order must be >= 0");
    }
    const auto det = determinant(bessel_matrix(k, order));
    std::vector<BigCount> out;
    for (int m = 0; m <= order; ++m) {
        const Rational& c = det[static_cast<std::size_t>(m)];
        if (m % 2 == 1) {
            if (sgn(c) != 0) {
                throw IntegrityError("odd coefficient x^" + std::to_string(m) + " of the Bessel determinant is nonzero");
            }
            continue;
        }
        const Rational scaled = c * Rational(factorial(m));
        if (scaled.get_den() != 1) {
            throw IntegrityError("(2n)! [x^2n] of the Bessel determinant is not integral at 2n = " + std::to_string(m) +
                                 ": " + scaled.get_str());
        }
        out.push_back(scaled.get_num());
    }
    return out;
}

MatchingSequence matching_sequence_via_determinant(int k, int m_max)
{
    const auto even = matching_counts_via_determinant(k, m_max);
    std::vector<BigCount> values(static_cast<std::size_t>(m_max) + 1);
    for (std::size_t n = 0; n < even.size(); ++n) {
        values[2 * n] = even[n];
    }
    return MatchingSequence(k, std::move(values));
}

RationalSeries substitution_map(int order)
{
    const auto denom = RationalSeries(std::vector<Rational>{1, 1, 1}, order);
    return RationalSeries::monomial(Rational(1), 2, order) * series_inverse(denom);
}

std::string to_string(LemmaForm form)
{
    return form == LemmaForm::AsStated ? "stated" : "symmetrized";
}

LemmaForm parse_lemma_form(const std::string& text)
{
    if (text == "stated") {
        return LemmaForm::AsStated;
    }
    if (text == "symmetrized") {
        return LemmaForm::Symmetrized;
    }
    throw std::invalid_argument("unknown lemma form '" + text + "' (expected stated or symmetrized)");
}

FunctionalEquationReport verify_functional_equation(int k, int order, const TangledSequence& t,
                                                    const MatchingSequence& f, LemmaForm form)
{
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2");
    }
    if (order < 0) {
        throw std::invalid_argument("order must be >= 0");
    }
    const auto need = static_cast<std::size_t>(order) + 1;
    if (t.values.size() < need) {
        throw RangeError("t sequence is missing index " + std::to_string(t.values.size()) + " (need 0.." +
                             std::to_string(order) + ")",
                         t.values.size());
    }
    if (f.values.size() < need) {
        throw RangeError("f sequence is missing index " + std::to_string(f.values.size()) + " (need 0.." +
                             std::to_string(order) + ")",
                         f.values.size());
    }

    const auto T = RationalSeries::from_integers(t.values, order);
    const auto F = RationalSeries::from_integers(f.values, order);
    const auto lhs = series_compose(T, substitution_map(order));

    const auto quadratic = RationalSeries(std::vector<Rational>{1, 1, 1}, order);
    const auto linear = RationalSeries(std::vector<Rational>{2, 1}, order);
    const auto h = quadratic * series_inverse(linear) * F;
    RationalSeries rhs = h;
    if (form == LemmaForm::Symmetrized) {
        // -z/(1+z)
        const auto involution = -(RationalSeries::variable(order) *
                                  series_inverse(RationalSeries(std::vector<Rational>{1, 1}, order)));
        rhs += series_compose(h, involution);
    }

    FunctionalEquationReport report;
    report.k = k;
    report.order = order;
    report.form = form;
    report.passed = true;
    for (int j = 0; j <= order; ++j) {
        const auto& a = lhs[static_cast<std::size_t>(j)];
        const auto& b = rhs[static_cast<std::size_t>(j)];
        if (a != b) {
            report.passed = false;
            report.first_mismatch = j;
            report.lhs = a;
            report.rhs = b;
            break;
        }
    }
    return report;
}

} // namespace tangle
