#include <tangle/asymptotics.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tangle::asym {

namespace {

unsigned bits_to_digits10(unsigned bits)
{
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

void require_positive_window(std::span<const BigCount> seq, std::size_t first, const char* who)
{
    for (std::size_t i = first; i < seq.size(); ++i) {
        if (sgn(seq[i]) <= 0) {
            throw std::invalid_argument(std::string(who) + ": term a(" + std::to_string(i) + ") is not positive");
        }
    }
}

// First index of the ratio window: ratios r_n for n = first..L-2.
std::size_t ratio_window_start(std::span<const BigCount> seq, int depth, const char* who)
{
    if (depth < 0) {
        throw std::invalid_argument(std::string(who) + ": depth must be >= 0");
    }
    const auto need = static_cast<std::size_t>(depth) + 2;
    if (seq.size() < need + 1) {
        throw std::invalid_argument(std::string(who) + ": needs at least " + std::to_string(need + 1) +
                                    " terms for depth " + std::to_string(depth));
    }
    const std::size_t first = seq.size() - need;
    require_positive_window(seq, first, who);
    return first;
}

Rational ratio(std::span<const BigCount> seq, std::size_t n)
{
    return Rational(seq[n + 1], seq[n]);
}

} // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(BigFloat::default_precision())
{
    if (bits < 16) {
        throw std::invalid_argument("precision must be at least 16 bits");
    }
    BigFloat::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope()
{
    BigFloat::default_precision(saved_digits10_);
}

BigFloat to_float(const Rational& q)
{
    BigFloat x;
    mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return x;
}

BigFloat to_float(const BigInt& z)
{
    BigFloat x;
    mpfr_set_z(x.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return x;
}

std::string to_exact_string(const BigFloat& x)
{
    const mpfr_srcptr v = x.backend().data();
    if (mpfr_zero_p(v)) {
        return "0";
    }
    if (!mpfr_number_p(v)) {
        return mpfr_nan_p(v) ? "nan" : (mpfr_sgn(v) > 0 ? "inf" : "-inf");
    }
    mpfr_exp_t exp = 0;
    char* digits = mpfr_get_str(nullptr, &exp, 10, 0, v, MPFR_RNDN);
    std::string s(digits);
    mpfr_free_str(digits);
    std::string sign;
    if (s[0] == '-') {
        sign = "-";
        s.erase(0, 1);
    }
    // 0.DDDD x 10^exp  ->  D.DDD e(exp-1)
    std::string out = sign + s.substr(0, 1);
    if (s.size() > 1) {
        out += "." + s.substr(1);
    }
    out += "e" + std::to_string(static_cast<long>(exp) - 1);
    return out;
}

BigFloat parse_float(const std::string& text)
{
    BigFloat x;
    if (mpfr_set_str(x.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0) {
        throw std::invalid_argument("not a floating-point number: '" + text + "'");
    }
    return x;
}

PredictedConstants predicted_constants(int k)
{
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2");
    }
    const long s = k - 1;
    PredictedConstants p;
    p.k = k;
    p.growth = BigInt(4 * s * s + 2 * s + 1);
    p.exponent = Rational(BigInt(2 * s * s + s), BigInt(2));
    p.exponent.canonicalize();
    p.rho = Rational(BigInt(1), BigInt(2 * s));
    p.tau = p.rho * p.rho / (p.rho * p.rho + p.rho + 1);
    return p;
}

BigFloat richardson(std::span<const BigFloat> values, long first_n, int depth)
{
    if (depth < 0 || values.size() < static_cast<std::size_t>(depth) + 1) {
        throw std::invalid_argument("richardson: need depth+1 values");
    }
    const std::size_t start = values.size() - static_cast<std::size_t>(depth) - 1;
    const long n0 = first_n + static_cast<long>(start);
    if (n0 <= 0) {
        throw std::invalid_argument("richardson: indices must be positive");
    }
    // sum_j (-1)^{depth-j} (n0+j)^depth s_{n0+j} / (j! (depth-j)!)
    BigFloat sum = 0;
    BigInt fact_j = 1;
    for (int j = 0; j <= depth; ++j) {
        if (j > 0) {
            fact_j *= j;
        }
        BigInt fact_rest;
        mpz_fac_ui(fact_rest.get_mpz_t(), static_cast<unsigned long>(depth - j));
        BigInt power;
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n0 + j), static_cast<unsigned long>(depth));
        const Rational weight(power, fact_j * fact_rest);
        BigFloat term = to_float(weight) * values[start + static_cast<std::size_t>(j)];
        if ((depth - j) % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

BigFloat estimate_growth(std::span<const BigCount> seq, int depth)
{
    const std::size_t first = ratio_window_start(seq, depth, "estimate_growth");
    std::vector<BigFloat> r;
    for (std::size_t n = first; n + 1 < seq.size(); ++n) {
        r.push_back(to_float(ratio(seq, n)));
    }
    return richardson(r, static_cast<long>(first), depth);
}

BigFloat estimate_exponent(std::span<const BigCount> seq, const Rational& growth, int depth)
{
    if (sgn(growth) <= 0) {
        throw std::invalid_argument("estimate_exponent: growth must be positive");
    }
    const std::size_t first = ratio_window_start(seq, depth, "estimate_exponent");
    std::vector<BigFloat> theta;
    for (std::size_t n = first; n + 1 < seq.size(); ++n) {
        const Rational x = Rational(static_cast<unsigned long>(n)) * (1 - ratio(seq, n) / growth);
        theta.push_back(to_float(x));
    }
    return richardson(theta, static_cast<long>(first), depth);
}

BigFloat estimate_exponent_blind(std::span<const BigCount> seq, int depth)
{
    const BigFloat growth = estimate_growth(seq, depth);
    const std::size_t first = ratio_window_start(seq, depth, "estimate_exponent_blind");
    std::vector<BigFloat> theta;
    for (std::size_t n = first; n + 1 < seq.size(); ++n) {
        theta.push_back(BigFloat(n) * (1 - to_float(ratio(seq, n)) / growth));
    }
    return richardson(theta, static_cast<long>(first), depth);
}

BigFloat estimate_ck(std::span<const BigCount> seq, const Rational& growth, const Rational& exponent, int depth)
{
    if (sgn(growth) <= 0) {
        throw std::invalid_argument("estimate_ck: growth must be positive");
    }
    if (depth < 0 || seq.size() < static_cast<std::size_t>(depth) + 2) {
        throw std::invalid_argument("estimate_ck: needs at least depth+2 terms");
    }
    const std::size_t first = seq.size() - static_cast<std::size_t>(depth) - 1;
    require_positive_window(seq, first, "estimate_ck");
    const BigFloat theta = to_float(exponent);
    std::vector<BigFloat> s;
    for (std::size_t n = first; n < seq.size(); ++n) {
        // a(n) / growth^n exactly, then one rounding
        Rational scaled(seq[n]);
        BigInt g_num;
        BigInt g_den;
        mpz_pow_ui(g_num.get_mpz_t(), growth.get_num_mpz_t(), n);
        mpz_pow_ui(g_den.get_mpz_t(), growth.get_den_mpz_t(), n);
        scaled *= Rational(g_den, g_num);
        scaled.canonicalize();
        s.push_back(to_float(scaled) * boost::multiprecision::pow(BigFloat(n), theta));
    }
    return richardson(s, static_cast<long>(first), depth);
}

BigFloat estimate_ck(std::span<const BigCount> seq, const PredictedConstants& pred, int depth)
{
    return estimate_ck(seq, Rational(pred.growth), pred.exponent, depth);
}

std::vector<BigFloat> ck_window(std::span<const BigCount> seq, const PredictedConstants& pred, int depth,
                                int window)
{
    if (window < 0 || seq.size() < static_cast<std::size_t>(window + depth) + 2) {
        throw std::invalid_argument("ck_window: sequence too short for window " + std::to_string(window));
    }
    std::vector<BigFloat> out;
    for (int back = window; back >= 0; --back) {
        out.push_back(estimate_ck(seq.first(seq.size() - static_cast<std::size_t>(back)), pred, depth));
    }
    return out;
}

BigFloat relative_spread(std::span<const BigFloat> values)
{
    if (values.empty()) {
        throw std::invalid_argument("relative_spread of an empty set");
    }
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    BigFloat mean = 0;
    for (const auto& v : values) {
        mean += v;
    }
    mean /= values.size();
    return (*hi - *lo) / abs(mean);
}

AsymptoticsReport analyze(std::span<const BigCount> seq, int k, const AnalysisConfig& cfg)
{
    PrecisionScope precision(cfg.precision_bits);
    AsymptoticsReport rep;
    rep.k = k;
    rep.depth = cfg.depth;
    rep.precision_bits = cfg.precision_bits;
    rep.ck_window = cfg.ck_window;
    rep.predicted = predicted_constants(k);
    rep.n_last = static_cast<long>(seq.size()) - 1;
    rep.n_first = std::max<long>(0, rep.n_last - cfg.ck_window - cfg.depth);

    const Rational growth(rep.predicted.growth);
    rep.estimated_growth = estimate_growth(seq, cfg.depth);
    rep.estimated_exponent = estimate_exponent(seq, growth, cfg.depth);
    rep.estimated_exponent_blind = estimate_exponent_blind(seq, cfg.depth);
    const auto window = ck_window(seq, rep.predicted, cfg.depth, cfg.ck_window);
    rep.estimated_ck = window.back();
    rep.ck_spread = relative_spread(window);
    const BigFloat g = to_float(growth);
    const BigFloat th = to_float(rep.predicted.exponent);
    rep.growth_rel_error = abs(rep.estimated_growth - g) / g;
    rep.exponent_rel_error = abs(rep.estimated_exponent - th) / th;
    return rep;
}

bool operator==(const AsymptoticsReport& a, const AsymptoticsReport& b)
{
    return a.k == b.k && a.n_first == b.n_first && a.n_last == b.n_last && a.depth == b.depth &&
           a.precision_bits == b.precision_bits && a.ck_window == b.ck_window && a.predicted == b.predicted &&
           a.estimated_growth == b.estimated_growth && a.estimated_exponent == b.estimated_exponent &&
           a.estimated_exponent_blind == b.estimated_exponent_blind && a.estimated_ck == b.estimated_ck &&
           a.ck_spread == b.ck_spread && a.growth_rel_error == b.growth_rel_error &&
           a.exponent_rel_error == b.exponent_rel_error;
}

} // namespace tangle::asym
