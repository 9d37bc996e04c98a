#include <tangle/sequence_io.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tangle::io {

namespace {

BigInt parse_integer(const std::string& text, const std::string& where)
{
    BigInt v;
    if (text.empty() || v.set_str(text, 10) != 0) {
        throw FormatError(where + ": not a decimal integer: '" + text + "'");
    }
    return v;
}

BigInt integer_from_json(const nlohmann::json& j)
{
    if (j.is_string()) {
        return parse_integer(j.get<std::string>(), "json");
    }
    if (j.is_number_integer()) {
        return BigInt(j.dump());
    }
    throw FormatError("json: expected an integer or decimal string, got " + j.dump());
}

Rational rational_from_json(const nlohmann::json& j)
{
    Rational q;
    const auto s = j.get<std::string>();
    if (q.set_str(s, 10) != 0) {
        throw FormatError("json: not a rational: '" + s + "'");
    }
    q.canonicalize();
    return q;
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return {};
    }
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void parse_header(const std::string& comment, SequenceFile& out)
{
    std::istringstream words(comment);
    std::string w;
    while (words >> w) {
        const auto eq = w.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        const auto key = w.substr(0, eq);
        const auto value = w.substr(eq + 1);
        if (key == "label") {
            out.label = parse_sequence_label(value);
        } else if (key == "k") {
            out.k = std::stoi(value);
        }
    }
}

} // namespace

void write_sequence(std::ostream& os, SequenceLabel label, int k, const std::vector<BigCount>& values)
{
    os << "# label=" << to_string(label) << " k=" << k << " generator=" << generator_name << '\n';
    for (const auto& v : values) {
        os << v.get_str() << '\n';
    }
}

SequenceFile read_sequence(std::istream& is)
{
    SequenceFile out;
    std::string line;
    bool seen_header = false;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t[0] == '#') {
            if (!seen_header) {
                parse_header(t.substr(1), out);
                seen_header = true;
            }
            continue;
        }
        out.values.push_back(parse_integer(t, "line " + std::to_string(line_no)));
    }
    return out;
}

SequenceFile read_sequence_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open sequence file '" + path + "'");
    }
    return read_sequence(in);
}

void write_sequence_file(const std::string& path, SequenceLabel label, int k, const std::vector<BigCount>& values)
{
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot write sequence file '" + path + "'");
    }
    write_sequence(out, label, k, values);
}

nlohmann::json to_json(const PRecurrence& rec)
{
    nlohmann::json polys = nlohmann::json::array();
    for (const auto& p : rec.coeff_polys) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : p) {
            row.push_back(c.get_str());
        }
        polys.push_back(std::move(row));
    }
    return {{"order", rec.order}, {"degree", rec.degree}, {"coeff_polys", std::move(polys)}};
}

PRecurrence recurrence_from_json(const nlohmann::json& j)
{
    try {
        std::vector<std::vector<BigInt>> polys;
        for (const auto& row : j.at("coeff_polys")) {
            std::vector<BigInt> p;
            for (const auto& c : row) {
                p.push_back(integer_from_json(c));
            }
            polys.push_back(std::move(p));
        }
        return PRecurrence(j.at("order").get<int>(), j.at("degree").get<int>(), std::move(polys));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed recurrence json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid recurrence: ") + e.what());
    }
}

PRecurrence read_recurrence_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open recurrence file '" + path + "'");
    }
    try {
        return recurrence_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("recurrence file '" + path + "' is not json: " + e.what());
    }
}

nlohmann::json to_json(const FunctionalEquationReport& rep)
{
    nlohmann::json j{{"k", rep.k},
                     {"order", rep.order},
                     {"form", to_string(rep.form)},
                     {"passed", rep.passed},
                     {"first_mismatch", nullptr},
                     {"lhs", rep.lhs.get_str()},
                     {"rhs", rep.rhs.get_str()}};
    if (rep.first_mismatch) {
        j["first_mismatch"] = *rep.first_mismatch;
    }
    return j;
}

FunctionalEquationReport lemma_report_from_json(const nlohmann::json& j)
{
    FunctionalEquationReport rep;
    rep.k = j.at("k").get<int>();
    rep.order = j.at("order").get<int>();
    rep.form = parse_lemma_form(j.at("form").get<std::string>());
    rep.passed = j.at("passed").get<bool>();
    if (!j.at("first_mismatch").is_null()) {
        rep.first_mismatch = j.at("first_mismatch").get<int>();
    }
    rep.lhs = rational_from_json(j.at("lhs"));
    rep.rhs = rational_from_json(j.at("rhs"));
    return rep;
}

nlohmann::json to_json(const asym::PredictedConstants& p)
{
    return {{"k", p.k},
            {"growth", p.growth.get_str()},
            {"exponent", p.exponent.get_str()},
            {"rho", p.rho.get_str()},
            {"tau", p.tau.get_str()}};
}

asym::PredictedConstants predicted_from_json(const nlohmann::json& j)
{
    asym::PredictedConstants p;
    p.k = j.at("k").get<int>();
    p.growth = integer_from_json(j.at("growth"));
    p.exponent = rational_from_json(j.at("exponent"));
    p.rho = rational_from_json(j.at("rho"));
    p.tau = rational_from_json(j.at("tau"));
    return p;
}

nlohmann::json to_json(const asym::AsymptoticsReport& rep)
{
    using asym::to_exact_string;
    return {{"k", rep.k},
            {"n_first", rep.n_first},
            {"n_last", rep.n_last},
            {"depth", rep.depth},
            {"precision_bits", rep.precision_bits},
            {"ck_window", rep.ck_window},
            {"predicted", to_json(rep.predicted)},
            {"estimated_growth", to_exact_string(rep.estimated_growth)},
            {"estimated_exponent", to_exact_string(rep.estimated_exponent)},
            {"estimated_exponent_blind", to_exact_string(rep.estimated_exponent_blind)},
            {"estimated_ck", to_exact_string(rep.estimated_ck)},
            {"ck_spread", to_exact_string(rep.ck_spread)},
            {"growth_rel_error", to_exact_string(rep.growth_rel_error)},
            {"exponent_rel_error", to_exact_string(rep.exponent_rel_error)}};
}

asym::AsymptoticsReport asymptotics_report_from_json(const nlohmann::json& j)
{
    asym::AsymptoticsReport rep;
    rep.precision_bits = j.at("precision_bits").get<unsigned>();
    asym::PrecisionScope precision(rep.precision_bits);
    auto f = [&](const char* key) { return asym::parse_float(j.at(key).get<std::string>()); };
    rep.k = j.at("k").get<int>();
    rep.n_first = j.at("n_first").get<long>();
    rep.n_last = j.at("n_last").get<long>();
    rep.depth = j.at("depth").get<int>();
    rep.ck_window = j.at("ck_window").get<int>();
    rep.predicted = predicted_from_json(j.at("predicted"));
    rep.estimated_growth = f("estimated_growth");
    rep.estimated_exponent = f("estimated_exponent");
    rep.estimated_exponent_blind = f("estimated_exponent_blind");
    rep.estimated_ck = f("estimated_ck");
    rep.ck_spread = f("ck_spread");
    rep.growth_rel_error = f("growth_rel_error");
    rep.exponent_rel_error = f("exponent_rel_error");
    return rep;
}

nlohmann::json to_json(const std::vector<BigCount>& values)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : values) {
        arr.push_back(v.get_str());
    }
    return arr;
}

std::vector<BigCount> counts_from_json(const nlohmann::json& j)
{
    std::vector<BigCount> out;
    for (const auto& v : j) {
        out.push_back(integer_from_json(v));
    }
    return out;
}

} // namespace tangle::io
