#include <tangle/recurrence.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <tangle/exact_linalg.hpp>

namespace tangle {

namespace {

bool is_zero_poly(const std::vector<BigInt>& p)
{
    return std::all_of(p.begin(), p.end(), [](const BigInt& c) { return sgn(c) == 0; });
}

// Sum_j p_j(n) a(n+j).
BigInt residual(const PRecurrence& rec, std::span<const BigCount> seq, std::size_t n)
{
    BigInt sum;
    const BigInt nn(static_cast<unsigned long>(n));
    for (int j = 0; j <= rec.order; ++j) {
        sum += rec.eval(j, nn) * seq[n + static_cast<std::size_t>(j)];
    }
    return sum;
}

// Column j*(d+1)+e holds n^e a(n+j).
linalg::IntMatrix fitting_rows(std::span<const BigCount> seq, int order, int degree, std::span<const std::size_t> ns)
{
    const auto width = static_cast<std::size_t>((order + 1) * (degree + 1));
    linalg::IntMatrix m;
    m.reserve(ns.size());
    for (std::size_t n : ns) {
        std::vector<BigInt> row(width);
        for (int j = 0; j <= order; ++j) {
            BigInt v = seq[n + static_cast<std::size_t>(j)];
            for (int e = 0; e <= degree; ++e) {
                row[static_cast<std::size_t>(j * (degree + 1) + e)] = v;
                v *= static_cast<unsigned long>(n);
            }
        }
        m.push_back(std::move(row));
    }
    return m;
}

linalg::ModMatrix fitting_rows_mod_p(std::span<const BigCount> seq, int order, int degree, std::size_t rows)
{
    const auto p = linalg::screening_prime;
    std::vector<std::uint64_t> residues(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        residues[i] = mpz_fdiv_ui(seq[i].get_mpz_t(), p);
    }
    const auto width = static_cast<std::size_t>((order + 1) * (degree + 1));
    linalg::ModMatrix m(rows, std::vector<std::uint64_t>(width));
    for (std::size_t n = 0; n < rows; ++n) {
        for (int j = 0; j <= order; ++j) {
            auto v = static_cast<unsigned __int128>(residues[n + static_cast<std::size_t>(j)]);
            for (int e = 0; e <= degree; ++e) {
                m[n][static_cast<std::size_t>(j * (degree + 1) + e)] = static_cast<std::uint64_t>(v);
                v = v * (n % p) % p;
            }
        }
    }
    return m;
}

std::optional<PRecurrence> try_shape(std::span<const BigCount> seq, int order, int degree, int margin)
{
    const std::size_t equations = seq.size() - static_cast<std::size_t>(order);
    const std::size_t fit = equations - static_cast<std::size_t>(margin);
    const auto width = static_cast<std::size_t>((order + 1) * (degree + 1));

    // A full-rank system mod p is full rank over Q; only rank-deficient
    // shapes reach the exact elimination.
    const auto screen = linalg::rank_mod_p(fitting_rows_mod_p(seq, order, degree, fit), width);
    if (screen.rank == width) {
        return std::nullopt;
    }
    // Rows independent mod p are independent over Q. If the full system has a
    // larger rational rank the vector found here fails verification below.
    auto rows = screen.pivot_rows;
    std::sort(rows.begin(), rows.end());
    auto solution = linalg::nullspace_vector(fitting_rows(seq, order, degree, rows), width);
    if (!solution) {
        return std::nullopt;
    }
    std::vector<std::vector<BigInt>> polys(static_cast<std::size_t>(order) + 1);
    for (int j = 0; j <= order; ++j) {
        auto first = solution->begin() + j * (degree + 1);
        polys[static_cast<std::size_t>(j)].assign(first, first + degree + 1);
    }
    if (is_zero_poly(polys.back())) {
        return std::nullopt;
    }
    PRecurrence rec(order, degree, std::move(polys));
    rec = rec.canonical();
    if (!verify_recurrence(rec, seq).passed) {
        return std::nullopt;
    }
    return rec;
}

} // namespace

PRecurrence::PRecurrence(int order_, int degree_, std::vector<std::vector<BigInt>> coeff_polys_)
    : order(order_), degree(degree_), coeff_polys(std::move(coeff_polys_))
{
    if (order < 1 || degree < 0) {
        throw std::invalid_argument("recurrence needs order >= 1 and degree >= 0");
    }
    if (coeff_polys.size() != static_cast<std::size_t>(order) + 1) {
        throw std::invalid_argument("recurrence of order " + std::to_string(order) + " needs " +
                                    std::to_string(order + 1) + " coefficient polynomials");
    }
    for (const auto& p : coeff_polys) {
        if (p.size() != static_cast<std::size_t>(degree) + 1) {
            throw std::invalid_argument("coefficient polynomial length does not match degree " +
                                        std::to_string(degree));
        }
    }
    if (is_zero_poly(coeff_polys.back())) {
        throw std::invalid_argument("leading coefficient polynomial p_order is identically zero");
    }
}

BigInt PRecurrence::eval(int j, const BigInt& n) const
{
    const auto& p = coeff_polys.at(static_cast<std::size_t>(j));
    BigInt v;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        v = v * n + *it;
    }
    return v;
}

PRecurrence PRecurrence::canonical() const
{
    PRecurrence r = *this;
    BigInt g = 0;
    for (const auto& p : r.coeff_polys) {
        for (const auto& c : p) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
    }
    const auto& lead = r.coeff_polys.back();
    auto top = std::find_if(lead.rbegin(), lead.rend(), [](const BigInt& c) { return sgn(c) != 0; });
    if (sgn(*top) < 0) {
        g = -g;
    }
    for (auto& p : r.coeff_polys) {
        for (auto& c : p) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
    }
    return r;
}

bool PRecurrence::is_canonical() const
{
    return canonical() == *this;
}

std::string PRecurrence::to_string() const
{
    std::ostringstream os;
    bool first_term = true;
    for (int j = 0; j <= order; ++j) {
        const auto& p = coeff_polys[static_cast<std::size_t>(j)];
        if (is_zero_poly(p)) {
            continue;
        }
        if (!first_term) {
            os << " + ";
        }
        first_term = false;
        os << '(';
        bool first_mono = true;
        for (std::size_t e = p.size(); e-- > 0;) {
            if (sgn(p[e]) == 0) {
                continue;
            }
            if (!first_mono) {
                os << (sgn(p[e]) < 0 ? " - " : " + ");
            } else if (sgn(p[e]) < 0) {
                os << '-';
            }
            first_mono = false;
            const BigInt mag = abs(p[e]);
            if (e == 0 || mag != 1) {
                os << mag.get_str();
            }
            if (e > 0) {
                os << 'n';
                if (e > 1) {
                    os << '^' << e;
                }
            }
        }
        os << ")*a(n";
        if (j > 0) {
            os << '+' << j;
        }
        os << ')';
    }
    os << " = 0";
    return os.str();
}

std::size_t required_terms(int order, int degree, int margin)
{
    return static_cast<std::size_t>((order + 1) * (degree + 1) + order + margin);
}

InsufficientTerms::InsufficientTerms(std::size_t required, std::size_t available)
    : TangleError("recurrence guessing needs " + std::to_string(required) + " terms, got " +
                  std::to_string(available)),
      required_(required), available_(available)
{
}

SingularLeadingCoefficient::SingularLeadingCoefficient(long n, std::vector<BigCount> partial)
    : TangleError("leading coefficient p_order(n) vanishes at n = " + std::to_string(n)), n_(n),
      partial_(std::move(partial))
{
}

std::optional<PRecurrence> guess_recurrence(std::span<const BigCount> seq, const GuessConfig& cfg)
{
    if (cfg.max_order < 1 || cfg.max_degree < 0) {
        throw std::invalid_argument("guess bounds need max_order >= 1 and max_degree >= 0");
    }
    if (cfg.verify_margin < 10) {
        throw std::invalid_argument("verify_margin must be >= 10");
    }
    const auto need = required_terms(cfg.max_order, cfg.max_degree, cfg.verify_margin);
    if (seq.size() < need) {
        throw InsufficientTerms(need, seq.size());
    }
    for (int order = 1; order <= cfg.max_order; ++order) {
        for (int degree = 0; degree <= cfg.max_degree; ++degree) {
            if (auto rec = try_shape(seq, order, degree, cfg.verify_margin)) {
                return rec;
            }
        }
    }
    return std::nullopt;
}

RecurrenceCheck verify_recurrence(const PRecurrence& rec, std::span<const BigCount> seq)
{
    RecurrenceCheck check;
    const auto r = static_cast<std::size_t>(rec.order);
    if (seq.size() <= r) {
        return check;
    }
    for (std::size_t n = 0; n + r < seq.size(); ++n) {
        ++check.equations;
        if (sgn(residual(rec, seq, n)) != 0) {
            check.passed = false;
            check.first_failure = n;
            break;
        }
    }
    return check;
}

std::vector<BigCount> extend_sequence(const PRecurrence& rec, std::span<const BigCount> seed, int n_max)
{
    if (n_max < 0) {
        throw std::invalid_argument("n_max must be >= 0");
    }
    const auto r = static_cast<std::size_t>(rec.order);
    const auto target = static_cast<std::size_t>(n_max) + 1;
    if (target <= seed.size()) {
        return {seed.begin(), seed.begin() + static_cast<std::ptrdiff_t>(target)};
    }
    if (seed.size() < r) {
        throw std::invalid_argument("seed needs at least " + std::to_string(r) + " terms");
    }
    std::vector<BigCount> a(seed.begin(), seed.end());
    a.reserve(target);
    BigInt sum;
    BigInt q;
    while (a.size() < target) {
        const std::size_t n = a.size() - r;
        const BigInt nn(static_cast<unsigned long>(n));
        const BigInt lead = rec.eval(rec.order, nn);
        if (sgn(lead) == 0) {
            throw SingularLeadingCoefficient(static_cast<long>(n), std::move(a));
        }
        sum = 0;
        for (std::size_t j = 0; j < r; ++j) {
            sum += rec.eval(static_cast<int>(j), nn) * a[n + j];
        }
        if (!mpz_divisible_p(sum.get_mpz_t(), lead.get_mpz_t())) {
            throw IntegrityError("recurrence division is not exact at n = " + std::to_string(n));
        }
        mpz_divexact(q.get_mpz_t(), sum.get_mpz_t(), lead.get_mpz_t());
        a.push_back(-q);
    }
    return a;
}

} // namespace tangle
