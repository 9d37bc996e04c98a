#pragma once

// Numerical check of the growth law t_k(n) ~ c_k n^{-theta} gamma^n with
// gamma = 4(k-1)^2 + 2(k-1) + 1 and theta = (k-1)^2 + (k-1)/2, by the ratio
// method and Richardson extrapolation over long exact sequences.

#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include <tangle/types.hpp>

namespace tangle::asym {

using BigFloat = boost::multiprecision::mpfr_float;

// Sets the default precision of newly created BigFloat values for the
// lifetime of the scope. The setting is process-wide; the requested bit count
// is rounded up to whole decimal digits.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

BigFloat to_float(const Rational& q);
BigFloat to_float(const BigInt& z);
// Exact round-trip text form (MPFR decides the digit count).
std::string to_exact_string(const BigFloat& x);
BigFloat parse_float(const std::string& text);

struct PredictedConstants {
    int k = 2;
    BigInt growth;     // 4(k-1)^2 + 2(k-1) + 1
    Rational exponent; // (k-1)^2 + (k-1)/2
    Rational rho;      // 1 / (2(k-1))
    Rational tau;      // rho^2 / (rho^2 + rho + 1)

    bool operator==(const PredictedConstants&) const = default;
};

PredictedConstants predicted_constants(int k);

// Richardson extrapolation of a sequence s_n = L + c_1/n + c_2/n^2 + ...
// values[i] is s at index first_n + i; the last depth+1 values are used.
BigFloat richardson(std::span<const BigFloat> values, long first_n, int depth);

// All estimators throw std::invalid_argument on too-short input or
// nonpositive terms in the window they read.
BigFloat estimate_growth(std::span<const BigCount> seq, int depth);
// Fit of theta from n (1 - a(n+1) / (growth a(n))), growth supplied exactly.
BigFloat estimate_exponent(std::span<const BigCount> seq, const Rational& growth, int depth);
// Same with the growth rate itself estimated first.
BigFloat estimate_exponent_blind(std::span<const BigCount> seq, int depth);
// Limit of a(n) n^exponent / growth^n.
BigFloat estimate_ck(std::span<const BigCount> seq, const Rational& growth, const Rational& exponent, int depth);
BigFloat estimate_ck(std::span<const BigCount> seq, const PredictedConstants& pred, int depth);

// estimate_ck evaluated with the sequence cut at each of the last `window`+1
// end points, oldest first.
std::vector<BigFloat> ck_window(std::span<const BigCount> seq, const PredictedConstants& pred, int depth,
                                int window);

// (max - min) / |mean|.
BigFloat relative_spread(std::span<const BigFloat> values);

struct AsymptoticsReport {
    int k = 2;
    long n_first = 0; // first index used by any estimator
    long n_last = 0;
    int depth = 4;
    unsigned precision_bits = 128;
    int ck_window = 200;
    PredictedConstants predicted;
    BigFloat estimated_growth;
    BigFloat estimated_exponent;       // with exact growth supplied
    BigFloat estimated_exponent_blind; // with estimated growth
    BigFloat estimated_ck;
    BigFloat ck_spread;
    BigFloat growth_rel_error;
    BigFloat exponent_rel_error;
};

struct AnalysisConfig {
    int depth = 4;
    unsigned precision_bits = 128;
    int ck_window = 200;
};

// Runs every estimator on t_k(0..n_max) and compares with the predictions.
AsymptoticsReport analyze(std::span<const BigCount> seq, int k, const AnalysisConfig& cfg = {});

bool operator==(const AsymptoticsReport& a, const AsymptoticsReport& b);

} // namespace tangle::asym
