#pragma once

// On-disk and JSON forms of sequences, recurrences and reports.
//
// Sequence files hold one decimal integer per line, index implicit from 0.
// Lines starting with '#' are comments; the first one carries
// "label=<f|t_tilde|t> k=<k> generator=<name>".

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <tangle/asymptotics.hpp>
#include <tangle/recurrence.hpp>
#include <tangle/series_kernel.hpp>
#include <tangle/transforms.hpp>
#include <tangle/types.hpp>

namespace tangle::io {

inline constexpr const char* generator_name = "tangle 1.0";

class FormatError : public TangleError {
public:
    using TangleError::TangleError;
};

struct SequenceFile {
    std::optional<SequenceLabel> label;
    std::optional<int> k;
    std::vector<BigCount> values;
};

void write_sequence(std::ostream& os, SequenceLabel label, int k, const std::vector<BigCount>& values);
SequenceFile read_sequence(std::istream& is);
SequenceFile read_sequence_file(const std::string& path);
void write_sequence_file(const std::string& path, SequenceLabel label, int k, const std::vector<BigCount>& values);

nlohmann::json to_json(const PRecurrence& rec);
PRecurrence recurrence_from_json(const nlohmann::json& j);
PRecurrence read_recurrence_file(const std::string& path);

nlohmann::json to_json(const FunctionalEquationReport& rep);
FunctionalEquationReport lemma_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const asym::PredictedConstants& p);
asym::PredictedConstants predicted_from_json(const nlohmann::json& j);
// Floats are written as exact round-trip decimal strings; parsing restores
// them at the report's precision.
nlohmann::json to_json(const asym::AsymptoticsReport& rep);
asym::AsymptoticsReport asymptotics_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const std::vector<BigCount>& values);
std::vector<BigCount> counts_from_json(const nlohmann::json& j);

} // namespace tangle::io
