#include <tangle/cli.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <tangle/asymptotics.hpp>
#include <tangle/sequence_io.hpp>
#include <tangle/walk_engine.hpp>

namespace tangle::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_error = 2;
constexpr int exit_resource = 3;

walk::WalkLimits limits_of(const RunConfig& cfg)
{
    return {cfg.dp_state_cap, cfg.brute_force_bound};
}

pipeline::PipelineOptions pipeline_options(const RunConfig& cfg)
{
    pipeline::PipelineOptions opts;
    opts.via = cfg.via;
    opts.limits = limits_of(cfg);
    return opts;
}

std::string join(const std::vector<BigCount>& values)
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            s += ", ";
        }
        s += values[i].get_str();
    }
    return s;
}

std::string label_name(SequenceLabel label, int k)
{
    return to_string(label) + "_" + std::to_string(k);
}

const std::vector<BigCount>& pick(const pipeline::SequenceBundle& b, SequenceLabel label)
{
    switch (label) {
    case SequenceLabel::f:
        return b.f.values;
    case SequenceLabel::t_tilde:
        return b.tilde.values;
    case SequenceLabel::t:
        return b.t.values;
    }
    return b.t.values;
}

// Compare two sequences on [first, last]; the first differing index is
// recorded together with both values.
CheckResult compare(std::string name, SequenceLabel label, const std::vector<BigCount>& expected,
                    const std::vector<BigCount>& actual, long first, long last)
{
    CheckResult r;
    r.name = std::move(name);
    r.sequence = to_string(label);
    r.first = first;
    r.last = last;
    for (long i = first; i <= last; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const bool have_e = idx < expected.size();
        const bool have_a = idx < actual.size();
        if (!have_e || !have_a || expected[idx] != actual[idx]) {
            r.passed = false;
            r.divergence = i;
            r.expected = have_e ? expected[idx].get_str() : "<missing>";
            r.actual = have_a ? actual[idx].get_str() : "<missing>";
            break;
        }
    }
    return r;
}

bool wants(const RunConfig& cfg, const std::string& check)
{
    return cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), check) != cfg.checks.end();
}

std::string fmt(const asym::BigFloat& x, int digits = 20)
{
    return x.str(digits, std::ios_base::fmtflags(0));
}

std::vector<BigCount> load_values(const RunConfig& cfg, SequenceLabel& label, int& k)
{
    const auto file = io::read_sequence_file(cfg.in_path);
    if (file.label) {
        label = *file.label;
    }
    if (file.k) {
        k = *file.k;
    }
    return file.values;
}

} // namespace

bool CrossCheckReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json to_json(const CrossCheckReport& rep)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        nlohmann::json j{{"name", c.name},       {"sequence", c.sequence},   {"first", c.first},
                         {"last", c.last},       {"passed", c.passed},       {"divergence", nullptr},
                         {"expected", c.expected}, {"actual", c.actual}};
        if (c.divergence) {
            j["divergence"] = *c.divergence;
        }
        checks.push_back(std::move(j));
    }
    return {{"k", rep.k}, {"n_max", rep.n_max}, {"passed", rep.passed()}, {"checks", std::move(checks)}};
}

CrossCheckReport cross_check_report_from_json(const nlohmann::json& j)
{
    CrossCheckReport rep;
    rep.k = j.at("k").get<int>();
    rep.n_max = j.at("n_max").get<int>();
    for (const auto& c : j.at("checks")) {
        CheckResult r;
        r.name = c.at("name").get<std::string>();
        r.sequence = c.at("sequence").get<std::string>();
        r.first = c.at("first").get<long>();
        r.last = c.at("last").get<long>();
        r.passed = c.at("passed").get<bool>();
        if (!c.at("divergence").is_null()) {
            r.divergence = c.at("divergence").get<long>();
        }
        r.expected = c.at("expected").get<std::string>();
        r.actual = c.at("actual").get<std::string>();
        rep.checks.push_back(std::move(r));
    }
    return rep;
}

GuessConfig guess_bounds_for(int terms, int max_order, int max_degree)
{
    GuessConfig g;
    const auto fits = [&](int r, int d) {
        return required_terms(r, d, g.verify_margin) <= static_cast<std::size_t>(std::max(terms, 0));
    };
    const int order_cap = max_order > 0 ? max_order : 8;
    const int degree_cap = max_degree >= 0 ? max_degree : 30;
    g.max_order = 1;
    g.max_degree = 0;
    for (bool grew = true; grew;) {
        grew = false;
        if (g.max_degree < degree_cap && fits(g.max_order, g.max_degree + 1)) {
            ++g.max_degree;
            grew = true;
        }
        if (g.max_order < order_cap && fits(g.max_order + 1, g.max_degree)) {
            ++g.max_order;
            grew = true;
        }
    }
    if (max_order > 0) {
        g.max_order = max_order;
    }
    if (max_degree >= 0) {
        g.max_degree = max_degree;
    }
    return g;
}

CrossCheckReport cross_check(const RunConfig& cfg)
{
    CrossCheckReport rep;
    rep.k = cfg.k;
    rep.n_max = cfg.n_max;
    const auto limits = limits_of(cfg);
    const int k = cfg.k;
    const int n_max = cfg.n_max;

    const auto dp = pipeline::compute_by_dp(k, n_max, limits);
    const auto need_day = wants(cfg, "bf") || wants(cfg, "dp") || wants(cfg, "transform-det");
    std::vector<BigCount> day_tilde;
    std::vector<BigCount> day_t;
    if (need_day) {
        day_tilde = walk::count_tangled_direct_prefix(k, n_max, walk::StepRegime::EnergeticDays, limits);
        day_t = walk::count_tangled_direct_prefix(k, n_max, walk::StepRegime::LazyEnergeticDays, limits);
    }

    if (wants(cfg, "bf")) {
        const int hi = std::min(n_max, cfg.brute_force_bound);
        std::vector<BigCount> bf_tilde;
        std::vector<BigCount> bf_t;
        for (int n = 0; n <= hi; ++n) {
            bf_tilde.emplace_back(static_cast<unsigned long>(
                walk::count_day_walks_brute_force(k, n, walk::StepRegime::EnergeticDays, limits)));
            bf_t.emplace_back(static_cast<unsigned long>(
                walk::count_day_walks_brute_force(k, n, walk::StepRegime::LazyEnergeticDays, limits)));
        }
        rep.checks.push_back(compare("bf-vs-daydp", SequenceLabel::t_tilde, bf_tilde, day_tilde, 0, hi));
        rep.checks.push_back(compare("bf-vs-daydp", SequenceLabel::t, bf_t, day_t, 0, hi));
    }
    if (wants(cfg, "dp")) {
        rep.checks.push_back(compare("daydp-vs-transform", SequenceLabel::t_tilde, day_tilde, dp.tilde.values, 0, n_max));
        rep.checks.push_back(compare("daydp-vs-transform", SequenceLabel::t, day_t, dp.t.values, 0, n_max));
    }
    if (wants(cfg, "det") || wants(cfg, "transform-det")) {
        const auto det_f = matching_sequence_via_determinant(k, 2 * n_max);
        if (wants(cfg, "det")) {
            rep.checks.push_back(compare("det-vs-chamberdp", SequenceLabel::f, dp.f.values, det_f.values, 0, 2L * n_max));
        }
        if (wants(cfg, "transform-det")) {
            const auto det_tilde = tilde_from_f(det_f, n_max);
            const auto det_t = t_from_tilde(det_tilde, n_max);
            rep.checks.push_back(
                compare("daydp-vs-transform-det", SequenceLabel::t_tilde, day_tilde, det_tilde.values, 0, n_max));
            rep.checks.push_back(compare("daydp-vs-transform-det", SequenceLabel::t, day_t, det_t.values, 0, n_max));
        }
    }
    if (!cfg.in_path.empty()) {
        SequenceLabel label = cfg.target;
        int file_k = k;
        const auto values = load_values(cfg, label, file_k);
        const long last = static_cast<long>(values.size()) - 1;
        const int n_need =
            label == SequenceLabel::f ? static_cast<int>((last + 1) / 2) : static_cast<int>(std::max(last, 0L));
        const auto reference = pipeline::compute_by_dp(file_k, n_need, limits);
        rep.checks.push_back(compare("file-vs-dp", label, pick(reference, label), values, 0, last));
    }
    return rep;
}

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    const auto bundle = pipeline::compute_sequences(cfg.k, cfg.n_max, pipeline_options(cfg));
    const int k = cfg.k;
    std::vector<std::string> written;
    if (!cfg.out_path.empty()) {
        std::filesystem::create_directories(cfg.out_path);
        for (auto label : {SequenceLabel::f, SequenceLabel::t_tilde, SequenceLabel::t}) {
            const auto path = (std::filesystem::path(cfg.out_path) / (label_name(label, k) + ".txt")).string();
            io::write_sequence_file(path, label, k, pick(bundle, label));
            written.push_back(path);
        }
    }
    switch (cfg.format) {
    case OutputFormat::json: {
        nlohmann::json j{{"k", k},
                         {"n_max", cfg.n_max},
                         {"strategy", bundle.strategy_line()},
                         {"f", io::to_json(bundle.f.values)},
                         {"t_tilde", io::to_json(bundle.tilde.values)},
                         {"t", io::to_json(bundle.t.values)},
                         {"files", written}};
        out << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::csv: {
        out << "index,f,t_tilde,t\n";
        for (std::size_t i = 0; i < bundle.f.values.size(); ++i) {
            out << i << ',' << bundle.f.values[i].get_str() << ',';
            if (i < bundle.tilde.values.size()) {
                out << bundle.tilde.values[i].get_str() << ',' << bundle.t.values[i].get_str();
            } else {
                out << ',';
            }
            out << '\n';
        }
        break;
    }
    case OutputFormat::plain:
        out << "# k=" << k << " n_max=" << cfg.n_max << '\n';
        out << "# " << bundle.strategy_line() << '\n';
        if (written.empty()) {
            for (auto label : {SequenceLabel::f, SequenceLabel::t_tilde, SequenceLabel::t}) {
                out << label_name(label, k) << ": " << join(pick(bundle, label)) << '\n';
            }
        } else {
            for (const auto& path : written) {
                out << "wrote " << path << '\n';
            }
            out << "t_" << k << "(" << cfg.n_max << ") = " << bundle.t.values.back().get_str() << '\n';
        }
        break;
    }
    return exit_ok;
}

int cmd_guess(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    SequenceLabel label = cfg.target;
    int k = cfg.k;
    std::vector<BigCount> values;
    if (!cfg.in_path.empty()) {
        values = load_values(cfg, label, k);
        if (label == SequenceLabel::f) {
            values = pipeline::even_part(MatchingSequence(k, std::move(values)));
        }
    } else {
        const auto dp = pipeline::compute_by_dp(k, std::max(cfg.terms - 1, 0), limits_of(cfg));
        values = label == SequenceLabel::f ? pipeline::even_part(dp.f) : pick(dp, label);
    }
    if (values.size() < static_cast<std::size_t>(cfg.terms)) {
        err << "error: need " << cfg.terms << " terms, input has " << values.size() << '\n';
        return exit_error;
    }
    values.resize(static_cast<std::size_t>(cfg.terms));
    const auto bounds = guess_bounds_for(cfg.terms, cfg.max_order, cfg.max_degree);
    const auto rec = guess_recurrence(values, bounds);
    const std::string what = label == SequenceLabel::f ? "f_" + std::to_string(k) + "(2n)" : label_name(label, k);

    if (!rec) {
        if (cfg.format == OutputFormat::json) {
            out << nlohmann::json{{"k", k}, {"sequence", to_string(label)}, {"terms", cfg.terms}, {"recurrence", nullptr}}
                       .dump(2)
                << '\n';
        } else {
            out << "no recurrence for " << what << " within order " << bounds.max_order << ", degree "
                << bounds.max_degree << '\n';
        }
        return exit_check_failed;
    }
    const std::string path =
        cfg.out_path.empty() ? "rec_" + to_string(label) + "_k" + std::to_string(k) + ".json" : cfg.out_path;
    {
        std::ofstream f(path);
        if (!f) {
            err << "error: cannot write " << path << '\n';
            return exit_error;
        }
        f << io::to_json(*rec).dump() << '\n';
    }
    const auto check = verify_recurrence(*rec, values);
    if (cfg.format == OutputFormat::json) {
        out << nlohmann::json{{"k", k},
                              {"sequence", to_string(label)},
                              {"terms", cfg.terms},
                              {"max_order", bounds.max_order},
                              {"max_degree", bounds.max_degree},
                              {"verify_margin", bounds.verify_margin},
                              {"equations_checked", check.equations},
                              {"recurrence", io::to_json(*rec)},
                              {"saved", path}}
                   .dump(2)
            << '\n';
    } else {
        out << "recurrence for " << what << " from " << cfg.terms << " terms (order " << rec->order << ", degree "
            << rec->degree << "; " << check.equations << " equations hold, last " << bounds.verify_margin
            << " held out of the fit):\n";
        out << "  " << rec->to_string() << '\n';
        out << "saved " << path << '\n';
    }
    return check.passed ? exit_ok : exit_check_failed;
}

int cmd_extend(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.rec_path.empty()) {
        err << "error: extend needs --rec FILE\n";
        return exit_error;
    }
    const auto rec = io::read_recurrence_file(cfg.rec_path);
    SequenceLabel label = cfg.target;
    int k = cfg.k;
    std::vector<BigCount> seed;
    if (!cfg.in_path.empty()) {
        seed = load_values(cfg, label, k);
        if (label == SequenceLabel::f) {
            seed = pipeline::even_part(MatchingSequence(k, std::move(seed)));
        }
    } else {
        const auto dp = pipeline::compute_by_dp(k, std::max(rec.order - 1, 0), limits_of(cfg));
        seed = label == SequenceLabel::f ? pipeline::even_part(dp.f) : pick(dp, label);
        seed.resize(static_cast<std::size_t>(rec.order));
    }
    std::vector<BigCount> values = seed;
    while (static_cast<int>(values.size()) <= cfg.n_max) {
        try {
            values = extend_sequence(rec, values, cfg.n_max);
        } catch (const SingularLeadingCoefficient& e) {
            values = e.partial();
            const int idx = static_cast<int>(values.size());
            const auto dp = pipeline::compute_by_dp(k, idx, limits_of(cfg));
            const auto patch = label == SequenceLabel::f ? pipeline::even_part(dp.f) : pick(dp, label);
            values.push_back(patch[static_cast<std::size_t>(idx)]);
        }
    }
    values.resize(static_cast<std::size_t>(cfg.n_max) + 1);
    if (label == SequenceLabel::f) {
        std::vector<BigCount> spread(2 * values.size() - 1);
        for (std::size_t n = 0; n < values.size(); ++n) {
            spread[2 * n] = values[n];
        }
        values = std::move(spread);
    }
    if (!cfg.out_path.empty()) {
        io::write_sequence_file(cfg.out_path, label, k, values);
    }
    if (cfg.format == OutputFormat::json) {
        out << nlohmann::json{{"k", k}, {"sequence", to_string(label)}, {"n_max", cfg.n_max},
                              {"values", io::to_json(values)}}
                   .dump(2)
            << '\n';
    } else if (cfg.out_path.empty()) {
        io::write_sequence(out, label, k, values);
    } else {
        out << "wrote " << values.size() << " terms of " << label_name(label, k) << " to " << cfg.out_path << '\n';
    }
    return exit_ok;
}

int cmd_cross_check(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    const auto rep = cross_check(cfg);
    switch (cfg.format) {
    case OutputFormat::json:
        out << to_json(rep).dump(2) << '\n';
        break;
    case OutputFormat::csv:
        out << "check,sequence,first,last,result,divergence,expected,actual\n";
        for (const auto& c : rep.checks) {
            out << c.name << ',' << c.sequence << ',' << c.first << ',' << c.last << ','
                << (c.passed ? "PASS" : "FAIL") << ',' << (c.divergence ? std::to_string(*c.divergence) : "")
                << ',' << c.expected << ',' << c.actual << '\n';
        }
        break;
    case OutputFormat::plain:
        out << "cross-check k=" << rep.k << " n_max=" << rep.n_max << '\n';
        for (const auto& c : rep.checks) {
            out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(24) << c.name << std::setw(8)
                << c.sequence << ' ' << (c.sequence == "f" ? "m" : "n") << '=' << c.first << ".." << c.last;
            if (c.divergence) {
                out << "  first divergence at " << *c.divergence << ": expected " << c.expected << ", got "
                    << c.actual;
            }
            out << '\n';
        }
        out << "overall: " << (rep.passed() ? "PASS" : "FAIL") << '\n';
        break;
    }
    return rep.passed() ? exit_ok : exit_check_failed;
}

int cmd_verify_lemma(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    const auto dp = pipeline::compute_by_dp(cfg.k, cfg.lemma_order, limits_of(cfg));
    const auto rep = verify_functional_equation(cfg.k, cfg.lemma_order, dp.t, dp.f, cfg.lemma_form);
    if (cfg.format == OutputFormat::json) {
        out << io::to_json(rep).dump(2) << '\n';
    } else {
        out << "verify-lemma k=" << rep.k << " order=" << rep.order << " form=" << to_string(rep.form) << ": ";
        if (rep.passed) {
            out << "PASS through z^" << rep.order << '\n';
        } else {
            out << "FAIL at z^" << *rep.first_mismatch << " (lhs " << rep.lhs.get_str() << ", rhs "
                << rep.rhs.get_str() << ")\n";
        }
    }
    return rep.passed ? exit_ok : exit_check_failed;
}

int cmd_asym(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    int k = cfg.k;
    std::vector<BigCount> seq;
    std::string strategy;
    if (!cfg.in_path.empty()) {
        SequenceLabel label = SequenceLabel::t;
        seq = load_values(cfg, label, k);
        strategy = "input " + cfg.in_path;
    } else {
        const auto bundle = pipeline::compute_sequences(k, cfg.n_max, pipeline_options(cfg));
        seq = bundle.t.values;
        strategy = bundle.strategy_line();
    }
    asym::AnalysisConfig acfg;
    acfg.depth = cfg.richardson_depth;
    acfg.precision_bits = cfg.precision_bits;
    acfg.ck_window = cfg.ck_window;
    const auto rep = asym::analyze(seq, k, acfg);

    asym::PrecisionScope precision(cfg.precision_bits);
    const bool growth_ok = rep.growth_rel_error < cfg.growth_tolerance;
    const bool exponent_ok = rep.exponent_rel_error < cfg.exponent_tolerance;
    const bool ck_ok = rep.estimated_ck > 0 && rep.ck_spread < cfg.ck_spread_tolerance;
    if (cfg.format == OutputFormat::json) {
        auto j = io::to_json(rep);
        j["checks"] = {{"growth", growth_ok}, {"exponent", exponent_ok}, {"ck", ck_ok}};
        out << j.dump(2) << '\n';
    } else {
        auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
        out << "asymptotics k=" << k << " n=" << rep.n_first << ".." << rep.n_last << " depth=" << rep.depth
            << " precision=" << rep.precision_bits << " bits\n";
        out << "# " << strategy << '\n';
        out << "predicted growth " << rep.predicted.growth.get_str() << ", exponent "
            << rep.predicted.exponent.get_str() << ", rho " << rep.predicted.rho.get_str() << ", tau "
            << rep.predicted.tau.get_str() << '\n';
        out << "growth    " << fmt(rep.estimated_growth) << "  rel.err " << fmt(rep.growth_rel_error, 6) << "  "
            << verdict(growth_ok) << " (< " << cfg.growth_tolerance << ")\n";
        out << "exponent  " << fmt(rep.estimated_exponent) << "  rel.err " << fmt(rep.exponent_rel_error, 6)
            << "  " << verdict(exponent_ok) << " (< " << cfg.exponent_tolerance << ")\n";
        out << "exponent (blind, estimated growth) " << fmt(rep.estimated_exponent_blind) << '\n';
        out << "c_k       " << fmt(rep.estimated_ck) << "  spread over last " << rep.ck_window << " terms "
            << fmt(rep.ck_spread, 6) << "  " << verdict(ck_ok) << " (< " << cfg.ck_spread_tolerance << ")\n";
    }
    return growth_ok && exponent_ok && ck_ok ? exit_ok : exit_check_failed;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        switch (cfg.command) {
        case Command::count:
            return cmd_count(cfg, out, err);
        case Command::guess:
            return cmd_guess(cfg, out, err);
        case Command::extend:
            return cmd_extend(cfg, out, err);
        case Command::cross_check:
            return cmd_cross_check(cfg, out, err);
        case Command::verify_lemma:
            return cmd_verify_lemma(cfg, out, err);
        case Command::asym:
            return cmd_asym(cfg, out, err);
        }
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << '\n';
        return exit_resource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Exact counting and analysis of k-noncrossing tangled diagrams", "tangle"};
    app.require_subcommand(1);

    std::string format = "plain";
    std::string via = "auto";
    std::string form = "stated";
    std::string seq = "t";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "crossing bound k (>= 2)")->check(CLI::Range(2, 64));
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"plain", "json", "csv"}));
        sub->add_option("--out", cfg.out_path, "output file or directory");
        sub->add_option("--bf-bound", cfg.brute_force_bound, "largest n for brute-force enumeration");
        sub->add_option("--state-cap", cfg.dp_state_cap, "DP state budget");
    };
    auto with_n = [&](CLI::App* sub) {
        sub->add_option("--n-max", cfg.n_max, "largest n")->check(CLI::NonNegativeNumber);
    };
    auto with_via = [&](CLI::App* sub) {
        sub->add_option("--via", via, "dp, recurrence or auto")->check(CLI::IsMember({"dp", "recurrence", "auto"}));
    };
    auto with_seq = [&](CLI::App* sub) {
        sub->add_option("--seq", seq, "sequence: f, t_tilde or t")->check(CLI::IsMember({"f", "t_tilde", "tt", "t"}));
        sub->add_option("--in", cfg.in_path, "input sequence file");
    };

    auto* count = app.add_subcommand("count", "compute f_k, t~_k and t_k up to n_max");
    common(count);
    with_n(count);
    with_via(count);

    auto* guess = app.add_subcommand("guess", "guess a P-recurrence from DP terms");
    common(guess);
    with_seq(guess);
    guess->add_option("--terms", cfg.terms, "number of terms to fit and verify")->check(CLI::PositiveNumber);
    guess->add_option("--max-order", cfg.max_order, "largest order tried");
    guess->add_option("--max-degree", cfg.max_degree, "largest coefficient degree tried");

    auto* extend = app.add_subcommand("extend", "extend a sequence with a recurrence");
    common(extend);
    with_n(extend);
    with_seq(extend);
    extend->add_option("--rec", cfg.rec_path, "recurrence json file")->required();

    auto* cross = app.add_subcommand("cross-check", "compare all counting routes");
    common(cross);
    with_n(cross);
    with_seq(cross);
    cross->add_option("--checks", cfg.checks, "subset of bf,dp,det,transform-det")
        ->delimiter(',')
        ->check(CLI::IsMember({"bf", "dp", "det", "transform-det"}));

    auto* lemma = app.add_subcommand("verify-lemma", "check the T_k / F_k functional equation as series");
    common(lemma);
    lemma->add_option("--order", cfg.lemma_order, "truncation order")->check(CLI::NonNegativeNumber);
    lemma->add_option("--form", form, "stated or symmetrized")->check(CLI::IsMember({"stated", "symmetrized"}));

    auto* asym_cmd = app.add_subcommand("asym", "estimate growth, exponent and c_k");
    common(asym_cmd);
    with_n(asym_cmd);
    with_via(asym_cmd);
    asym_cmd->add_option("--in", cfg.in_path, "t sequence file instead of computing");
    asym_cmd->add_option("--depth", cfg.richardson_depth, "Richardson depth")->check(CLI::NonNegativeNumber);
    asym_cmd->add_option("--precision-bits", cfg.precision_bits, "float precision");
    asym_cmd->add_option("--ck-window", cfg.ck_window, "trailing window for c_k stability");
    asym_cmd->add_option("--growth-tol", cfg.growth_tolerance);
    asym_cmd->add_option("--exponent-tol", cfg.exponent_tolerance);
    asym_cmd->add_option("--ck-spread-tol", cfg.ck_spread_tolerance);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    cfg.format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::plain;
    cfg.via = pipeline::parse_strategy(via);
    cfg.lemma_form = parse_lemma_form(form);
    cfg.target = parse_sequence_label(seq);
    if (count->parsed()) {
        cfg.command = Command::count;
    } else if (guess->parsed()) {
        cfg.command = Command::guess;
    } else if (extend->parsed()) {
        cfg.command = Command::extend;
    } else if (cross->parsed()) {
        cfg.command = Command::cross_check;
    } else if (lemma->parsed()) {
        cfg.command = Command::verify_lemma;
    } else {
        cfg.command = Command::asym;
    }
    return dispatch(cfg, out, err);
}

} // namespace tangle::cli
