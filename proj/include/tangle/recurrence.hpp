#pragma once

// P-recursive (holonomic) sequences: guessing a linear recurrence with
// polynomial coefficients from a finite prefix, checking it, and unrolling it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <tangle/types.hpp>

namespace tangle {

// sum_{j=0}^{order} p_j(n) a(n+j) = 0 for all n >= 0, with
// coeff_polys[j] = coefficients of p_j, constant term first, each of length
// degree+1.
struct PRecurrence {
    int order = 1;
    int degree = 0;
    std::vector<std::vector<BigInt>> coeff_polys;

    PRecurrence() = default;
    // Validates shape; throws std::invalid_argument on ragged polynomials or
    // an identically zero leading polynomial p_order.
    PRecurrence(int order_, int degree_, std::vector<std::vector<BigInt>> coeff_polys_);

    BigInt eval(int j, const BigInt& n) const;

    // Divide by the content and fix the sign so the highest nonzero
    // coefficient of p_order is positive.
    PRecurrence canonical() const;
    bool is_canonical() const;

    std::string to_string() const;

    bool operator==(const PRecurrence&) const = default;
};

struct GuessConfig {
    int max_order = 4;
    int max_degree = 4;
    int verify_margin = 10;
};

// Terms needed to fit a shape and still hold back `margin` equations.
std::size_t required_terms(int order, int degree, int margin);

class InsufficientTerms : public TangleError {
public:
    InsufficientTerms(std::size_t required, std::size_t available);
    std::size_t required() const noexcept { return required_; }
    std::size_t available() const noexcept { return available_; }

private:
    std::size_t required_;
    std::size_t available_;
};

class SingularLeadingCoefficient : public TangleError {
public:
    SingularLeadingCoefficient(long n, std::vector<BigCount> partial);
    // p_order(n) vanishes, so a(n+order) is not determined.
    long n() const noexcept { return n_; }
    // Terms a(0)..a(n+order-1), all determined.
    const std::vector<BigCount>& partial() const noexcept { return partial_; }

private:
    long n_;
    std::vector<BigCount> partial_;
};

// Minimal (order, degree) recurrence, order searched first. Each candidate
// shape is fitted on all but the last verify_margin equations and must then
// satisfy the held-back ones too. Returns nullopt if no shape within the
// bounds works. Throws InsufficientTerms if seq is too short for the largest
// shape in the bounds.
std::optional<PRecurrence> guess_recurrence(std::span<const BigCount> seq, const GuessConfig& cfg);

struct RecurrenceCheck {
    bool passed = true;
    std::optional<std::size_t> first_failure; // smallest failing n
    std::size_t equations = 0;
};

RecurrenceCheck verify_recurrence(const PRecurrence& rec, std::span<const BigCount> seq);

// a(0..n_max), seeded with `seed` and continued by the recurrence. Throws
// SingularLeadingCoefficient when p_order(n) = 0 for a needed n, and
// IntegrityError if a division is not exact.
std::vector<BigCount> extend_sequence(const PRecurrence& rec, std::span<const BigCount> seed, int n_max);

} // namespace tangle
