#pragma once

// Generating-function side of the toolkit: the Bessel-determinant formula for
// the exponential generating function of f_k(2n), and an exact check of the
// functional equation linking T_k(z) = sum t_k(n) z^n with
// F_k(z) = sum f_k(2n) z^{2n}.

#include <optional>
#include <string>
#include <vector>

#include <tangle/rational_series.hpp>
#include <tangle/transforms.hpp>
#include <tangle/types.hpp>

namespace tangle {

using SeriesMatrix = std::vector<std::vector<RationalSeries>>;

// I_m(2x) = sum_j x^{m+2j} / (j! (m+j)!), truncated at x^order. m >= 0.
RationalSeries bessel_series(int m, int order);

// [I_{i-j}(2x) - I_{i+j}(2x)], i,j = 1..k-1, with I_{-m} = I_m.
SeriesMatrix bessel_matrix(int k, int order);

// Fraction-free (Bareiss) elimination over the truncated series ring. Pivots
// are chosen with the lowest valuation in their column; when no unit pivot is
// left the remaining minor is expanded by cofactors.
RationalSeries determinant(SeriesMatrix m);

// Laplace expansion along the first row. Exponential; for small matrices and
// as an independent check of determinant().
RationalSeries determinant_by_cofactors(const SeriesMatrix& m);

// f_k(2n) for 0 <= 2n <= order, read off as (2n)! [x^{2n}] of the
// determinant. Throws IntegrityError if an extraction is not an integer or an
// odd coefficient is nonzero.
std::vector<BigCount> matching_counts_via_determinant(int k, int order);

// The same counts laid out by step index m = 0..m_max (odd entries zero).
MatchingSequence matching_sequence_via_determinant(int k, int m_max);

// Substitution map z^2 / (1 + z + z^2).
RationalSeries substitution_map(int order);

enum class LemmaForm {
    // T(z^2/(1+z+z^2)) = (1+z+z^2)/(z+2) * F(z), exactly as published.
    AsStated,
    // T(z^2/(1+z+z^2)) = h(z) + h(-z/(1+z)), h = (1+z+z^2)/(z+2) * F(z).
    // The substitution map is two-to-one near 0 with involution
    // z -> -z/(1+z); summing h over both preimages gives the identity that
    // holds coefficientwise.
    Symmetrized,
};

std::string to_string(LemmaForm form);
LemmaForm parse_lemma_form(const std::string& text);

struct FunctionalEquationReport {
    int k = 2;
    int order = 0;
    LemmaForm form = LemmaForm::AsStated;
    bool passed = false;
    std::optional<int> first_mismatch;
    // Coefficients at the first mismatch (zero when passed).
    Rational lhs;
    Rational rhs;

    bool operator==(const FunctionalEquationReport&) const = default;
};

// Compares both sides coefficientwise through z^order. t must cover indices
// 0..order and f (indexed by steps m) 0..order; otherwise RangeError.
FunctionalEquationReport verify_functional_equation(int k, int order, const TangledSequence& t,
                                                    const MatchingSequence& f,
                                                    LemmaForm form = LemmaForm::AsStated);

} // namespace tangle
