#include <doctest.h>

#include <tangle/asymptotics.hpp>
#include <tangle/transforms.hpp>
#include <tangle/walk_engine.hpp>

#include "oracles.hpp"

using namespace tangle;
using namespace tangle::asym;

namespace {

std::vector<BigCount> catalan_terms(unsigned last)
{
    std::vector<BigCount> out;
    for (unsigned n = 0; n <= last; ++n) {
        out.push_back(oracle::catalan(n));
    }
    return out;
}

double rel_error(const BigFloat& x, double target)
{
    return std::abs(x.convert_to<double>() - target) / std::abs(target);
}

} // namespace

TEST_CASE("predicted constants")
{
    const auto p2 = predicted_constants(2);
    CHECK(p2.growth == 7);
    CHECK(p2.exponent == Rational(3, 2));
    CHECK(p2.rho == Rational(1, 2));
    CHECK(p2.tau == Rational(1, 7));
    const auto p3 = predicted_constants(3);
    CHECK(p3.growth == 21);
    CHECK(p3.exponent == 5);
    CHECK(p3.rho == Rational(1, 4));
    CHECK(p3.tau == Rational(1, 21));
    const auto p4 = predicted_constants(4);
    CHECK(p4.growth == 43);
    CHECK(p4.exponent == Rational(21, 2));
    CHECK(p4.rho == Rational(1, 6));
    CHECK(p4.tau == Rational(1, 43));
    CHECK_THROWS_AS(predicted_constants(1), std::invalid_argument);
}

TEST_CASE("tau times growth is one")
{
    for (int k = 2; k <= 20; ++k) {
        const auto p = predicted_constants(k);
        CHECK(p.tau * Rational(p.growth) == 1);
    }
}

TEST_CASE("Catalan calibration")
{
    PrecisionScope precision(128);
    const auto c = catalan_terms(200);
    CHECK(rel_error(estimate_growth(c, 3), 4.0) * 4.0 < 1e-6);
    CHECK(rel_error(estimate_exponent(c, Rational(4), 3), 1.5) < 0.01);
    const double inv_sqrt_pi = 1.0 / std::sqrt(3.14159265358979323846);
    CHECK(rel_error(estimate_ck(c, Rational(4), Rational(3, 2), 3), inv_sqrt_pi) < 0.01);
}

TEST_CASE("growth estimates on gamma^n poly(n) converge with depth")
{
    PrecisionScope precision(128);
    for (long gamma : {3L, 5L, 12L}) {
        std::vector<BigCount> seq;
        for (long n = 0; n <= 150; ++n) {
            BigCount g;
            mpz_ui_pow_ui(g.get_mpz_t(), static_cast<unsigned long>(gamma), static_cast<unsigned long>(n));
            seq.push_back(g * (n + 1) * (n + 3) * (2 * n + 7));
        }
        double prev = 1.0;
        for (int depth = 0; depth <= 4; ++depth) {
            const double err = rel_error(estimate_growth(seq, depth), static_cast<double>(gamma));
            CAPTURE(gamma);
            CAPTURE(depth);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-8);
    }
}

TEST_CASE("each Richardson level at least halves the error on 1/n expansions")
{
    PrecisionScope precision(128);
    // s_n = 2 + 1/(n+1) + 3/(n+2)^2 expands in powers of 1/n.
    std::vector<BigFloat> s;
    const long first = 50;
    for (long n = first; n <= 120; ++n) {
        s.push_back(BigFloat(2) + BigFloat(1) / BigFloat(n + 1) + BigFloat(3) / BigFloat((n + 2) * (n + 2)));
    }
    BigFloat prev = 1;
    for (int depth = 0; depth <= 5; ++depth) {
        const BigFloat err = abs(richardson(s, first, depth) - 2);
        CAPTURE(depth);
        CHECK(err * 2 <= prev);
        prev = err;
    }
}

TEST_CASE("estimators are deterministic")
{
    const MatchingSequence f(2, walk::count_matchings_prefix(2, 600));
    const auto t = t_from_tilde(tilde_from_f(f, 300), 300).values;
    AnalysisConfig cfg;
    cfg.ck_window = 50;
    const auto a = analyze(t, 2, cfg);
    const auto b = analyze(t, 2, cfg);
    CHECK(a == b);
    CHECK(a.estimated_ck > 0);
    CHECK(a.ck_spread < 0.01);
    CHECK(a.growth_rel_error < 0.005);
    CHECK(a.exponent_rel_error < 0.03);
    CHECK(a.n_last == 300);
}

TEST_CASE("estimator input checks")
{
    const std::vector<BigCount> short_seq{1, 2, 3};
    CHECK_THROWS_AS(estimate_growth(short_seq, 4), std::invalid_argument);
    std::vector<BigCount> with_zero = catalan_terms(40);
    with_zero[38] = 0;
    CHECK_THROWS_AS(estimate_growth(with_zero, 2), std::invalid_argument);
    CHECK_THROWS_AS(estimate_growth(catalan_terms(40), -1), std::invalid_argument);
    CHECK_THROWS_AS(ck_window(catalan_terms(40), predicted_constants(2), 2, 100), std::invalid_argument);
    CHECK_THROWS_AS(PrecisionScope(4), std::invalid_argument);
}

TEST_CASE("spread and window")
{
    PrecisionScope precision(128);
    const std::vector<BigFloat> v{BigFloat(1), BigFloat(2), BigFloat(3)};
    CHECK(relative_spread(v) == 1);
    const auto w = ck_window(catalan_terms(120), predicted_constants(2), 2, 10);
    CHECK(w.size() == 11);
}

TEST_CASE("exact float text round-trips")
{
    PrecisionScope precision(128);
    const BigFloat x = to_float(Rational(1, 3));
    CHECK(parse_float(to_exact_string(x)) == x);
    const BigFloat y = to_float(BigInt("123456789012345678901234567890"));
    CHECK(parse_float(to_exact_string(y)) == y);
    CHECK_THROWS_AS(parse_float("abc"), std::invalid_argument);
}
