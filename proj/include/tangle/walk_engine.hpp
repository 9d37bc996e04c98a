#pragma once

// Exact lattice-walk counting in the Weyl chamber x_1 >= ... >= x_{k-1} >= 0.
//
// f_k(m) counts m-step walks from the origin back to the origin with unit
// steps +-e_i. A "day walk" groups unit steps into days: each day the walker
// may stay in place (lazy regime only), take one unit step, or take two
// consecutive unit steps. Every position visited, including the midpoint of
// a two-step day, must lie in the chamber.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <tangle/types.hpp>

namespace tangle::walk {

struct UnitStep {
    int axis; // 0-based coordinate index
    int sign; // +1 or -1

    auto operator<=>(const UnitStep&) const = default;
};

// Weakly decreasing nonnegative coordinate vector of length k-1.
class ChamberState {
public:
    // Throws std::invalid_argument if coords is empty or violates the chamber
    // condition.
    explicit ChamberState(std::vector<int> coords);

    static ChamberState origin(int k);

    std::size_t dimension() const noexcept { return coords_.size(); }
    std::span<const int> coords() const noexcept { return coords_; }
    int operator[](std::size_t i) const { return coords_[i]; }
    long total() const noexcept;
    bool is_origin() const noexcept;

    // The state after one unit step, or nullopt if it leaves the chamber.
    std::optional<ChamberState> moved(UnitStep step) const;

    std::string to_string() const;

    auto operator<=>(const ChamberState&) const = default;

private:
    struct Unchecked {};
    ChamberState(std::vector<int> coords, Unchecked) : coords_(std::move(coords)) {}

    std::vector<int> coords_;
};

enum class StepRegime {
    MatchingSteps,     // one unit step per tick
    EnergeticDays,     // one or two unit steps per day
    LazyEnergeticDays, // stay, one, or two unit steps per day
};

std::string to_string(StepRegime regime);

// Zero, one or two unit steps.
struct DayMove {
    std::vector<UnitStep> steps;

    auto operator<=>(const DayMove&) const = default;
};

using DayWalk = std::vector<DayMove>;

// Walk counts keyed by endpoint. Absent keys mean zero.
using DpLayer = std::map<ChamberState, BigCount>;

struct WalkLimits {
    std::size_t state_cap = 10'000'000;
    int brute_force_bound = 8;
};

// +-e_i for i = 0..k-2, ordered (axis, +1), (axis, -1) by axis.
std::vector<UnitStep> unit_steps(int k);

// f_k(0..m_max).
std::vector<BigCount> count_matchings_prefix(int k, int m_max, const WalkLimits& limits = {});

// Endpoint distribution of all chamber walks with `steps` unit steps, no
// return constraint. Intended for small step counts.
DpLayer matching_walk_layer(int k, int steps, const WalkLimits& limits = {});

// Number of n-day origin-to-origin walks. EnergeticDays gives t~_k(n),
// LazyEnergeticDays gives t_k(n).
BigCount count_tangled_direct(int k, int n, StepRegime regime, const WalkLimits& limits = {});

// Same count for every n in 0..n_max from a single DP pass.
std::vector<BigCount> count_tangled_direct_prefix(int k, int n_max, StepRegime regime,
                                                  const WalkLimits& limits = {});

// Calls `visit` once per n-day origin-to-origin walk. Refuses n above
// limits.brute_force_bound. Walks that cannot return are cut early, which
// does not change the set visited.
void for_each_day_walk(int k, int n, StepRegime regime, const std::function<void(const DayWalk&)>& visit,
                       const WalkLimits& limits = {});

std::vector<DayWalk> enumerate_day_walks(int k, int n, StepRegime regime, const WalkLimits& limits = {});

std::uint64_t count_day_walks_brute_force(int k, int n, StepRegime regime, const WalkLimits& limits = {});

} // namespace tangle::walk
