#pragma once

// Produces f_k, t~_k and t_k up to a target n, by chamber DP alone or by DP
// up to a pivot followed by recurrence extension.

#include <optional>
#include <string>
#include <vector>

#include <tangle/recurrence.hpp>
#include <tangle/transforms.hpp>
#include <tangle/walk_engine.hpp>

namespace tangle::pipeline {

enum class Strategy { dp, recurrence, automatic };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& text);

struct PipelineOptions {
    Strategy via = Strategy::automatic;
    GuessConfig guess{8, 12, 10};
    // DP terms computed beyond the fitting prefix and compared against the
    // recurrence.
    int overlap = 20;
    // automatic uses DP alone for k above this.
    int max_recurrence_k = 4;
    walk::WalkLimits limits;
};

struct Provenance {
    SequenceLabel label = SequenceLabel::t;
    long dp_last = 0; // last index computed by DP (vertex index n)
    std::optional<PRecurrence> recurrence;
    long fit_terms = 0;     // terms used to guess
    long overlap_terms = 0; // DP terms checked against the recurrence
    std::vector<long> dp_patched; // indices filled by DP at singular points
};

struct SequenceBundle {
    int k = 2;
    int n_max = 0;
    MatchingSequence f; // m = 0..2 n_max
    TildeSequence tilde;
    TangledSequence t;
    std::vector<Provenance> provenance; // f (even part), t_tilde, t

    std::string strategy_line() const;
};

// f by chamber DP, t~ and t by the binomial transforms.
SequenceBundle compute_by_dp(int k, int n_max, const walk::WalkLimits& limits = {});

// Throws TangleError if the recurrence route is forced and no recurrence is
// found within the guess bounds, and IntegrityError if a recurrence disagrees
// with DP on the overlap.
SequenceBundle compute_sequences(int k, int n_max, const PipelineOptions& opts = {});

// Even part f(0), f(2), f(4), ... of an f sequence.
std::vector<BigCount> even_part(const MatchingSequence& f);

} // namespace tangle::pipeline
