#include <doctest.h>

#include <random>

#include <tangle/rational_series.hpp>
#include <tangle/series_kernel.hpp>
#include <tangle/walk_engine.hpp>

#include "oracles.hpp"

using namespace tangle;

namespace {

RationalSeries series(std::vector<Rational> c, int order)
{
    return RationalSeries(std::move(c), order);
}

RationalSeries random_series(std::mt19937_64& rng, int order)
{
    return RationalSeries(oracle::random_rationals(rng, static_cast<std::size_t>(order) + 1), order);
}

std::vector<Rational> coeffs(const RationalSeries& s)
{
    return {s.coeffs().begin(), s.coeffs().end()};
}

} // namespace

TEST_CASE("series construction")
{
    const auto s = series({1, 2}, 4);
    CHECK(s.order() == 4);
    CHECK(s[1] == 2);
    CHECK(s[4] == 0);
    CHECK(s.valuation() == 0);
    CHECK(RationalSeries(3).is_zero());
    CHECK(RationalSeries::monomial(Rational(5), 7, 4).is_zero());
    CHECK(series({0, 0, 3}, 5).valuation() == 2);
    CHECK(series({1, 2, 3, 4}, 2) == series({1, 2, 3}, 2));
    CHECK_THROWS_AS(RationalSeries(-1), std::invalid_argument);
}

TEST_CASE("inverse, worked examples")
{
    const auto inv = series_inverse(series({1, 1, 1}, 6));
    CHECK(coeffs(inv) == std::vector<Rational>{1, -1, 0, 1, -1, 0, 1});
    CHECK(series({1, 1, 1}, 6) * inv == RationalSeries::constant(Rational(1), 6));

    const auto half = series_inverse(series({2, 1}, 2));
    CHECK(coeffs(half) == std::vector<Rational>{Rational(1, 2), Rational(-1, 4), Rational(1, 8)});

    CHECK_THROWS_AS(series_inverse(series({0, 1}, 3)), NonUnitError);
}

TEST_CASE("composition, worked example")
{
    const auto theta = substitution_map(8);
    CHECK(coeffs(theta) == std::vector<Rational>{0, 0, 1, -1, 0, 1, -1, 0, 1});
    CHECK(series_compose(RationalSeries::variable(8), theta) == theta);
    CHECK_THROWS_AS(series_compose(theta, series({1, 1}, 8)), CompositionError);
}

TEST_CASE("mixed orders truncate to the smaller")
{
    const auto a = series({1, 1, 1, 1, 1}, 4);
    const auto b = series({1, 1}, 2);
    CHECK((a + b).order() == 2);
    CHECK((a * b).order() == 2);
    CHECK(series_compose(a, series({0, 1}, 3)).order() == 3);
}

TEST_CASE("ring laws on random series")
{
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + trial % 9;
        const auto a = random_series(rng, n);
        const auto b = random_series(rng, n);
        const auto c = random_series(rng, n);
        const auto zero = RationalSeries(n);
        const auto one = RationalSeries::constant(Rational(1), n);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + zero == a);
        CHECK(a * one == a);
        CHECK(a - a == zero);
        CHECK(series_mul(a, b) == a * b);
        CHECK(series_add(a, b) == a + b);
        CHECK(series_scale(a, Rational(3, 7)) == a * Rational(3, 7));
        CHECK(coeffs(a * b) == oracle::naive_product(coeffs(a), coeffs(b), static_cast<std::size_t>(n)));
        if (a[0] != 0) {
            CHECK(a * series_inverse(a) == one);
            CHECK(series_inverse(series_inverse(a)) == a);
        }
    }
}

TEST_CASE("composition laws on random series")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + trial % 6;
        const auto a = random_series(rng, n);
        const auto b = random_series(rng, n);
        auto g = random_series(rng, n);
        auto h = random_series(rng, n);
        g = g - RationalSeries::constant(g[0], n);
        h = h - RationalSeries::constant(h[0], n);
        CHECK(series_compose(a + b, g) == series_compose(a, g) + series_compose(b, g));
        CHECK(series_compose(a * b, g) == series_compose(a, g) * series_compose(b, g));
        CHECK(series_compose(series_compose(a, g), h) == series_compose(a, series_compose(g, h)));
        CHECK(series_compose(a, RationalSeries::variable(n)) == a);
    }
}

TEST_CASE("Bessel series")
{
    CHECK(coeffs(bessel_series(0, 4)) == std::vector<Rational>{1, 0, 1, 0, Rational(1, 4)});
    CHECK(coeffs(bessel_series(2, 2)) == std::vector<Rational>{0, 0, Rational(1, 2)});
    CHECK(bessel_series(5, 3).is_zero());
    CHECK_THROWS_AS(bessel_series(-1, 3), std::invalid_argument);
}

TEST_CASE("determinant, worked examples")
{
    CHECK(matching_counts_via_determinant(2, 4) == std::vector<BigCount>{1, 1, 2});
    CHECK(matching_counts_via_determinant(3, 6) == std::vector<BigCount>{1, 1, 3, 14});
    const auto f = matching_sequence_via_determinant(2, 6);
    CHECK(f.values == std::vector<BigCount>{1, 0, 1, 0, 2, 0, 5});
}

TEST_CASE("Bareiss determinant equals cofactor expansion")
{
    for (int k = 2; k <= 6; ++k) {
        const auto m = bessel_matrix(k, 14);
        CHECK(determinant(m) == determinant_by_cofactors(m));
    }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t dim = 1 + static_cast<std::size_t>(trial % 4);
        SeriesMatrix m(dim);
        for (auto& row : m) {
            for (std::size_t j = 0; j < dim; ++j) {
                auto s = random_series(rng, 6);
                // Positive valuations force the non-unit pivot path.
                if (trial % 2 == 1) {
                    s = s * RationalSeries::variable(6);
                }
                row.push_back(s);
            }
        }
        CHECK(determinant(m) == determinant_by_cofactors(m));
    }
}

TEST_CASE("determinant agrees with walk DP")
{
    for (int k = 2; k <= 6; ++k) {
        const auto det = matching_counts_via_determinant(k, 30);
        const auto dp = walk::count_matchings_prefix(k, 30);
        for (std::size_t n = 0; n < det.size(); ++n) {
            CHECK(det[n] == dp[2 * n]);
        }
    }
}

namespace {

struct LemmaInputs {
    TangledSequence t;
    MatchingSequence f;
};

LemmaInputs lemma_inputs(int k, int order)
{
    const MatchingSequence f(k, walk::count_matchings_prefix(k, 2 * order));
    return {TangledSequence(k, walk::count_tangled_direct_prefix(k, order, walk::StepRegime::LazyEnergeticDays)), f};
}

} // namespace

TEST_CASE("functional equation as stated fails at the constant term")
{
    for (int k = 2; k <= 4; ++k) {
        const auto in = lemma_inputs(k, 10);
        const auto rep = verify_functional_equation(k, 10, in.t, in.f, LemmaForm::AsStated);
        CHECK_FALSE(rep.passed);
        REQUIRE(rep.first_mismatch.has_value());
        CHECK(*rep.first_mismatch == 0);
        CHECK(rep.lhs == 1);
        CHECK(rep.rhs == Rational(1, 2));
    }
}

TEST_CASE("symmetrized functional equation holds")
{
    const auto k2 = lemma_inputs(2, 10);
    CHECK(verify_functional_equation(2, 10, k2.t, k2.f, LemmaForm::Symmetrized).passed);
    const auto k3 = lemma_inputs(3, 20);
    CHECK(verify_functional_equation(3, 20, k3.t, k3.f, LemmaForm::Symmetrized).passed);
    const auto k5 = lemma_inputs(5, 16);
    CHECK(verify_functional_equation(5, 16, k5.t, k5.f, LemmaForm::Symmetrized).passed);
}

TEST_CASE("functional equation detects corrupted input")
{
    auto in = lemma_inputs(3, 20);
    in.t.values[7] += 1;
    const auto rep = verify_functional_equation(3, 20, in.t, in.f, LemmaForm::Symmetrized);
    CHECK_FALSE(rep.passed);
    REQUIRE(rep.first_mismatch.has_value());
    // t(7) first enters through theta^7, whose lowest term is z^14.
    CHECK(*rep.first_mismatch == 14);

    auto short_in = lemma_inputs(2, 5);
    CHECK_THROWS_AS(verify_functional_equation(2, 8, short_in.t, short_in.f), RangeError);
}

TEST_CASE("lemma form names")
{
    CHECK(parse_lemma_form("stated") == LemmaForm::AsStated);
    CHECK(parse_lemma_form(to_string(LemmaForm::Symmetrized)) == LemmaForm::Symmetrized);
    CHECK_THROWS_AS(parse_lemma_form("other"), std::invalid_argument);
}
