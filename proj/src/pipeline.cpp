#include <tangle/pipeline.hpp>

#include <sstream>
#include <stdexcept>

namespace tangle::pipeline {

namespace {

MatchingSequence spread_even(int k, const std::vector<BigCount>& even)
{
    std::vector<BigCount> values(even.empty() ? 0 : 2 * even.size() - 1);
    for (std::size_t n = 0; n < even.size(); ++n) {
        values[2 * n] = even[n];
    }
    return MatchingSequence(k, std::move(values));
}

std::vector<BigCount> dp_values(SequenceLabel label, int k, int n, const walk::WalkLimits& limits)
{
    const auto bundle = compute_by_dp(k, n, limits);
    switch (label) {
    case SequenceLabel::f:
        return even_part(bundle.f);
    case SequenceLabel::t_tilde:
        return bundle.tilde.values;
    case SequenceLabel::t:
        return bundle.t.values;
    }
    return {};
}

// Guess on the first fit_terms values of `dp`, confirm on the rest of `dp`,
// then unroll to n_max. Singular leading coefficients are bridged with DP.
std::optional<std::vector<BigCount>> extend_by_recurrence(SequenceLabel label, int k, const std::vector<BigCount>& dp,
                                                          int n_max, const PipelineOptions& opts, Provenance& prov)
{
    const auto fit = required_terms(opts.guess.max_order, opts.guess.max_degree, opts.guess.verify_margin);
    std::span<const BigCount> prefix(dp.data(), fit);
    auto rec = guess_recurrence(prefix, opts.guess);
    if (!rec) {
        return std::nullopt;
    }
    prov.recurrence = rec;
    prov.fit_terms = static_cast<long>(fit);
    prov.dp_last = static_cast<long>(dp.size()) - 1;

    std::vector<BigCount> seq(dp.begin(), dp.begin() + static_cast<std::ptrdiff_t>(fit));
    const int target = std::max<int>(n_max, static_cast<int>(dp.size()) - 1);
    while (static_cast<int>(seq.size()) <= target) {
        try {
            seq = extend_sequence(*rec, seq, target);
        } catch (const SingularLeadingCoefficient& e) {
            seq = e.partial();
            const long idx = static_cast<long>(seq.size());
            prov.dp_patched.push_back(idx);
            if (idx < static_cast<long>(dp.size())) {
                seq.push_back(dp[static_cast<std::size_t>(idx)]);
            } else {
                seq.push_back(dp_values(label, k, static_cast<int>(idx), opts.limits).back());
            }
        }
    }
    for (std::size_t n = fit; n < dp.size(); ++n) {
        if (seq[n] != dp[n]) {
            throw IntegrityError("recurrence for " + to_string(label) + "_" + std::to_string(k) +
                                 " disagrees with DP at n = " + std::to_string(n));
        }
    }
    prov.overlap_terms = static_cast<long>(dp.size() - fit);
    seq.resize(static_cast<std::size_t>(n_max) + 1);
    return seq;
}

} // namespace

std::string to_string(Strategy s)
{
    switch (s) {
    case Strategy::dp:
        return "dp";
    case Strategy::recurrence:
        return "recurrence";
    case Strategy::automatic:
        return "auto";
    }
    return "?";
}

Strategy parse_strategy(const std::string& text)
{
    if (text == "dp") {
        return Strategy::dp;
    }
    if (text == "recurrence") {
        return Strategy::recurrence;
    }
    if (text == "auto") {
        return Strategy::automatic;
    }
    throw std::invalid_argument("unknown strategy '" + text + "' (expected dp, recurrence or auto)");
}

std::vector<BigCount> even_part(const MatchingSequence& f)
{
    std::vector<BigCount> out;
    for (std::size_t m = 0; m < f.values.size(); m += 2) {
        out.push_back(f.values[m]);
    }
    return out;
}

SequenceBundle compute_by_dp(int k, int n_max, const walk::WalkLimits& limits)
{
    SequenceBundle b;
    b.k = k;
    b.n_max = n_max;
    b.f = MatchingSequence(k, walk::count_matchings_prefix(k, 2 * n_max, limits));
    b.tilde = tilde_from_f(b.f, n_max);
    b.t = t_from_tilde(b.tilde, n_max);
    for (auto label : {SequenceLabel::f, SequenceLabel::t_tilde, SequenceLabel::t}) {
        Provenance p;
        p.label = label;
        p.dp_last = n_max;
        b.provenance.push_back(std::move(p));
    }
    return b;
}

SequenceBundle compute_sequences(int k, int n_max, const PipelineOptions& opts)
{
    if (opts.overlap < 0) {
        throw std::invalid_argument("overlap must be >= 0");
    }
    const auto fit = static_cast<int>(
        required_terms(opts.guess.max_order, opts.guess.max_degree, opts.guess.verify_margin));
    const int dp_n = fit - 1 + opts.overlap;
    if (opts.via == Strategy::dp ||
        (opts.via == Strategy::automatic && (n_max <= dp_n || k > opts.max_recurrence_k))) {
        return compute_by_dp(k, n_max, opts.limits);
    }

    const auto dp = compute_by_dp(k, dp_n, opts.limits);
    SequenceBundle b;
    b.k = k;
    b.n_max = n_max;
    std::vector<std::vector<BigCount>> extended;
    for (auto label : {SequenceLabel::f, SequenceLabel::t_tilde, SequenceLabel::t}) {
        const auto& source = label == SequenceLabel::f         ? even_part(dp.f)
                             : label == SequenceLabel::t_tilde ? dp.tilde.values
                                                               : dp.t.values;
        Provenance prov;
        prov.label = label;
        auto seq = extend_by_recurrence(label, k, source, n_max, opts, prov);
        if (!seq) {
            if (opts.via == Strategy::recurrence) {
                throw TangleError("no recurrence for " + to_string(label) + "_" + std::to_string(k) +
                                  " within order " + std::to_string(opts.guess.max_order) + ", degree " +
                                  std::to_string(opts.guess.max_degree));
            }
            return compute_by_dp(k, n_max, opts.limits);
        }
        extended.push_back(std::move(*seq));
        b.provenance.push_back(std::move(prov));
    }
    b.f = spread_even(k, extended[0]);
    b.tilde = TildeSequence(k, std::move(extended[1]));
    b.t = TangledSequence(k, std::move(extended[2]));
    return b;
}

std::string SequenceBundle::strategy_line() const
{
    std::ostringstream os;
    os << "strategy:";
    for (const auto& p : provenance) {
        os << ' ' << to_string(p.label) << "=dp[0.." << std::min<long>(p.dp_last, n_max) << ']';
        if (p.recurrence) {
            if (p.dp_last < n_max) {
                os << "+recurrence[" << p.dp_last + 1 << ".." << n_max << ']';
            } else {
                os << " checked against recurrence";
            }
            os << "(order " << p.recurrence->order << ", degree " << p.recurrence->degree << ", fit "
               << p.fit_terms << ", overlap " << p.overlap_terms << ')';
            for (long idx : p.dp_patched) {
                os << " dp-patch@" << idx;
            }
        }
        os << ';';
    }
    auto s = os.str();
    s.pop_back();
    return s;
}

} // namespace tangle::pipeline
