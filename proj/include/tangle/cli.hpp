#pragma once

// Command-line front end: count, guess, extend, cross-check, verify-lemma and
// asym subcommands. run() is the whole program minus process setup, so tests
// can drive it with captured streams.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <tangle/pipeline.hpp>
#include <tangle/series_kernel.hpp>
#include <tangle/transforms.hpp>

namespace tangle::cli {

enum class Command { count, guess, extend, cross_check, verify_lemma, asym };
enum class OutputFormat { plain, json, csv };

struct RunConfig {
    Command command = Command::count;
    int k = 2;
    int n_max = 10;
    OutputFormat format = OutputFormat::plain;
    std::string in_path;
    std::string out_path;
    std::string rec_path;
    int brute_force_bound = 8;
    std::size_t dp_state_cap = 10'000'000;
    unsigned precision_bits = 128;
    int richardson_depth = 4;
    pipeline::Strategy via = pipeline::Strategy::automatic;
    int lemma_order = 40;
    LemmaForm lemma_form = LemmaForm::AsStated;
    SequenceLabel target = SequenceLabel::t;
    int terms = 60;
    int max_order = -1; // -1: derived from terms
    int max_degree = -1;
    int ck_window = 200;
    double growth_tolerance = 0.005;
    double exponent_tolerance = 0.03;
    double ck_spread_tolerance = 0.01;
    std::vector<std::string> checks; // empty: every applicable check
};

struct CheckResult {
    std::string name;
    std::string sequence;
    long first = 0;
    long last = 0;
    bool passed = true;
    std::optional<long> divergence;
    std::string expected;
    std::string actual;

    bool operator==(const CheckResult&) const = default;
};

struct CrossCheckReport {
    int k = 2;
    int n_max = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    bool operator==(const CrossCheckReport&) const = default;
};

nlohmann::json to_json(const CrossCheckReport& rep);
CrossCheckReport cross_check_report_from_json(const nlohmann::json& j);

// Guess bounds grown alternately in degree and order (order at most 8) while
// their term requirement fits in `terms`. Explicit bounds are kept as given.
GuessConfig guess_bounds_for(int terms, int max_order = -1, int max_degree = -1);

CrossCheckReport cross_check(const RunConfig& cfg);

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_guess(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_extend(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cross_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify_lemma(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_asym(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tangle::cli
