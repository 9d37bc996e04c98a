#include <tangle/walk_engine.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace tangle::walk {

namespace {

void require_k(int k)
{
    if (k < 2) {
        throw std::invalid_argument("k must be >= 2, got " + std::to_string(k));
    }
}

bool in_chamber(std::span<const int> c)
{
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0) {
            return false;
        }
        if (i > 0 && c[i] > c[i - 1]) {
            return false;
        }
    }
    return true;
}

struct CoordsHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Chamber states interned on first sight. Neighbour ids are cached lazily, so
// only states a walk actually reaches are ever materialized.
class StateTable {
public:
    static constexpr int unknown = -2;
    static constexpr int illegal = -1;

    StateTable(int k, std::size_t cap) : dim_(k - 1), steps_(unit_steps(k)), cap_(cap)
    {
        intern(std::vector<int>(static_cast<std::size_t>(dim_), 0));
    }

    std::size_t size() const noexcept { return totals_.size(); }
    std::size_t num_steps() const noexcept { return steps_.size(); }
    long total(int id) const { return totals_[static_cast<std::size_t>(id)]; }

    std::vector<int> coords(int id) const
    {
        auto first = coords_.begin() + static_cast<std::ptrdiff_t>(id) * dim_;
        return {first, first + dim_};
    }

    int neighbour(int id, std::size_t step)
    {
        const std::size_t slot = static_cast<std::size_t>(id) * steps_.size() + step;
        int nb = neighbours_[slot];
        if (nb != unknown) {
            return nb;
        }
        auto c = coords(id);
        const auto& s = steps_[step];
        c[static_cast<std::size_t>(s.axis)] += s.sign;
        nb = in_chamber(c) ? intern(std::move(c)) : illegal;
        neighbours_[slot] = nb;
        return nb;
    }

private:
    int intern(std::vector<int> c)
    {
        auto it = ids_.find(c);
        if (it != ids_.end()) {
            return it->second;
        }
        if (totals_.size() >= cap_) {
            throw ResourceLimitError("chamber DP state cap of " + std::to_string(cap_) + " states exceeded");
        }
        const int id = static_cast<int>(totals_.size());
        totals_.push_back(std::accumulate(c.begin(), c.end(), 0L));
        coords_.insert(coords_.end(), c.begin(), c.end());
        neighbours_.resize(neighbours_.size() + steps_.size(), unknown);
        ids_.emplace(std::move(c), id);
        return id;
    }

    int dim_;
    std::vector<UnitStep> steps_;
    std::size_t cap_;
    std::unordered_map<std::vector<int>, int, CoordsHash> ids_;
    std::vector<int> coords_;
    std::vector<long> totals_;
    std::vector<int> neighbours_;
};

// Sparse layer: (state id, count) pairs with nonzero counts.
using SparseLayer = std::vector<std::pair<int, BigCount>>;

// Dense scratch accumulator indexed by state id.
class Accumulator {
public:
    void add(int id, const BigCount& c)
    {
        const auto i = static_cast<std::size_t>(id);
        if (i >= values_.size()) {
            values_.resize(i + 1);
            marked_.resize(i + 1, 0);
        }
        if (!marked_[i]) {
            marked_[i] = 1;
            touched_.push_back(id);
        }
        values_[i] += c;
    }

    void add(const SparseLayer& layer)
    {
        for (const auto& [id, c] : layer) {
            add(id, c);
        }
    }

    SparseLayer drain()
    {
        SparseLayer out;
        out.reserve(touched_.size());
        for (int id : touched_) {
            const auto i = static_cast<std::size_t>(id);
            if (sgn(values_[i]) != 0) {
                out.emplace_back(id, std::move(values_[i]));
            }
            values_[i] = 0;
            marked_[i] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    std::vector<BigCount> values_;
    std::vector<char> marked_;
    std::vector<int> touched_;
};

// One unit step from every state of `in`; results with coordinate sum above
// max_total are dropped (they cannot return to the origin in time).
SparseLayer unit_step(StateTable& table, Accumulator& acc, const SparseLayer& in, long max_total)
{
    for (const auto& [id, c] : in) {
        for (std::size_t s = 0; s < table.num_steps(); ++s) {
            const int nb = table.neighbour(id, s);
            if (nb >= 0 && table.total(nb) <= max_total) {
                acc.add(nb, c);
            }
        }
    }
    return acc.drain();
}

BigCount at_origin(const SparseLayer& layer)
{
    for (const auto& [id, c] : layer) {
        if (id == 0) {
            return c;
        }
    }
    return 0;
}

void require_day_regime(StepRegime regime)
{
    if (regime == StepRegime::MatchingSteps) {
        throw std::invalid_argument("day-walk counting needs EnergeticDays or LazyEnergeticDays; "
                                    "use count_matchings_prefix for unit-step walks");
    }
}

} // namespace

ChamberState::ChamberState(std::vector<int> coords) : coords_(std::move(coords))
{
    if (coords_.empty()) {
        throw std::invalid_argument("chamber state needs at least one coordinate");
    }
    if (!in_chamber(coords_)) {
        throw std::invalid_argument("coordinates violate x_1 >= ... >= x_{k-1} >= 0");
    }
}

ChamberState ChamberState::origin(int k)
{
    require_k(k);
    return ChamberState(std::vector<int>(static_cast<std::size_t>(k - 1), 0), Unchecked{});
}

long ChamberState::total() const noexcept
{
    return std::accumulate(coords_.begin(), coords_.end(), 0L);
}

bool ChamberState::is_origin() const noexcept
{
    return std::all_of(coords_.begin(), coords_.end(), [](int x) { return x == 0; });
}

std::optional<ChamberState> ChamberState::moved(UnitStep step) const
{
    if (step.axis < 0 || static_cast<std::size_t>(step.axis) >= coords_.size()) {
        throw std::out_of_range("unit step axis out of range");
    }
    auto c = coords_;
    c[static_cast<std::size_t>(step.axis)] += step.sign;
    if (!in_chamber(c)) {
        return std::nullopt;
    }
    return ChamberState(std::move(c), Unchecked{});
}

std::string ChamberState::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        os << (i ? "," : "") << coords_[i];
    }
    os << ')';
    return os.str();
}

std::string to_string(StepRegime regime)
{
    switch (regime) {
    case StepRegime::MatchingSteps:
        return "MatchingSteps";
    case StepRegime::EnergeticDays:
        return "EnergeticDays";
    case StepRegime::LazyEnergeticDays:
        return "LazyEnergeticDays";
    }
    return "?";
}

std::vector<UnitStep> unit_steps(int k)
{
    require_k(k);
    std::vector<UnitStep> steps;
    for (int axis = 0; axis < k - 1; ++axis) {
        steps.push_back({axis, +1});
        steps.push_back({axis, -1});
    }
    return steps;
}

std::vector<BigCount> count_matchings_prefix(int k, int m_max, const WalkLimits& limits)
{
    require_k(k);
    if (m_max < 0) {
        throw std::invalid_argument("m_max must be >= 0");
    }
    StateTable table(k, limits.state_cap);
    Accumulator acc;
    SparseLayer cur{{0, BigCount(1)}};
    std::vector<BigCount> f{1};
    f.reserve(static_cast<std::size_t>(m_max) + 1);
    for (int m = 1; m <= m_max; ++m) {
        cur = unit_step(table, acc, cur, m_max - m);
        f.push_back(at_origin(cur));
    }
    return f;
}

DpLayer matching_walk_layer(int k, int steps, const WalkLimits& limits)
{
    require_k(k);
    if (steps < 0) {
        throw std::invalid_argument("steps must be >= 0");
    }
    StateTable table(k, limits.state_cap);
    Accumulator acc;
    SparseLayer cur{{0, BigCount(1)}};
    for (int m = 0; m < steps; ++m) {
        cur = unit_step(table, acc, cur, static_cast<long>(steps));
    }
    DpLayer out;
    for (auto& [id, c] : cur) {
        out.emplace(ChamberState(table.coords(id)), std::move(c));
    }
    return out;
}

std::vector<BigCount> count_tangled_direct_prefix(int k, int n_max, StepRegime regime, const WalkLimits& limits)
{
    require_k(k);
    require_day_regime(regime);
    if (n_max < 0) {
        throw std::invalid_argument("n must be >= 0");
    }
    const bool lazy = regime == StepRegime::LazyEnergeticDays;
    StateTable table(k, limits.state_cap);
    Accumulator acc;
    SparseLayer cur{{0, BigCount(1)}};
    std::vector<BigCount> out{1};
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int day = 1; day <= n_max; ++day) {
        const long bound = 2L * (n_max - day);
        // day operator: [stay] + S + S^2, S = legal unit step
        const SparseLayer one = unit_step(table, acc, cur, bound + 1);
        const SparseLayer two = unit_step(table, acc, one, bound);
        auto add_within = [&](const SparseLayer& layer) {
            for (const auto& [id, c] : layer) {
                if (table.total(id) <= bound) {
                    acc.add(id, c);
                }
            }
        };
        if (lazy) {
            add_within(cur);
        }
        add_within(one);
        acc.add(two);
        cur = acc.drain();
        out.push_back(at_origin(cur));
    }
    return out;
}

BigCount count_tangled_direct(int k, int n, StepRegime regime, const WalkLimits& limits)
{
    return count_tangled_direct_prefix(k, n, regime, limits).back();
}

void for_each_day_walk(int k, int n, StepRegime regime, const std::function<void(const DayWalk&)>& visit,
                       const WalkLimits& limits)
{
    require_k(k);
    require_day_regime(regime);
    if (n < 0) {
        throw std::invalid_argument("n must be >= 0");
    }
    if (n > limits.brute_force_bound) {
        throw ResourceLimitError("brute-force enumeration refused: n = " + std::to_string(n) + " exceeds bound " +
                                 std::to_string(limits.brute_force_bound));
    }
    const bool lazy = regime == StepRegime::LazyEnergeticDays;
    const auto steps = unit_steps(k);
    DayWalk walk;
    walk.reserve(static_cast<std::size_t>(n));

    // Depth-first over days; `pos` is the position at the start of `day`.
    std::function<void(const ChamberState&, int)> rec = [&](const ChamberState& pos, int day) {
        if (day == n) {
            if (pos.is_origin()) {
                visit(walk);
            }
            return;
        }
        const long remaining_steps = 2L * (n - day);
        auto descend = [&](const ChamberState& next, DayMove move) {
            if (next.total() > remaining_steps - 2) {
                return;
            }
            walk.push_back(std::move(move));
            rec(next, day + 1);
            walk.pop_back();
        };
        if (lazy) {
            descend(pos, DayMove{});
        }
        for (const auto& s1 : steps) {
            auto mid = pos.moved(s1);
            if (!mid) {
                continue;
            }
            descend(*mid, DayMove{{s1}});
            for (const auto& s2 : steps) {
                if (auto end = mid->moved(s2)) {
                    descend(*end, DayMove{{s1, s2}});
                }
            }
        }
    };
    rec(ChamberState::origin(k), 0);
}

std::vector<DayWalk> enumerate_day_walks(int k, int n, StepRegime regime, const WalkLimits& limits)
{
    std::vector<DayWalk> out;
    for_each_day_walk(k, n, regime, [&](const DayWalk& w) { out.push_back(w); }, limits);
    return out;
}

std::uint64_t count_day_walks_brute_force(int k, int n, StepRegime regime, const WalkLimits& limits)
{
    std::uint64_t count = 0;
    for_each_day_walk(k, n, regime, [&](const DayWalk&) { ++count; }, limits);
    return count;
}

} // namespace tangle::walk
