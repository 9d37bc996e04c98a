#include <tangle/exact_linalg.hpp>

#include <stdexcept>
#include <utility>

namespace tangle::linalg {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    return r;
}

} // namespace

ModRank rank_mod_p(ModMatrix rows, std::size_t num_cols, std::uint64_t p)
{
    ModRank out;
    std::vector<std::size_t> origin(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        origin[i] = i;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < num_cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) {
            ++piv;
        }
        if (piv == rows.size()) {
            continue;
        }
        std::swap(rows[piv], rows[r]);
        std::swap(origin[piv], origin[r]);
        const std::uint64_t inv = pow_mod(rows[r][c], p - 2, p);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) {
                continue;
            }
            const std::uint64_t factor = mul_mod(rows[i][c], inv, p);
            for (std::size_t j = c; j < num_cols; ++j) {
                const std::uint64_t sub = mul_mod(factor, rows[r][j], p);
                rows[i][j] = rows[i][j] >= sub ? rows[i][j] - sub : rows[i][j] + p - sub;
            }
        }
        out.pivot_rows.push_back(origin[r]);
        ++r;
    }
    out.rank = r;
    return out;
}

Echelon bareiss_echelon(IntMatrix m, std::size_t num_cols)
{
    for (const auto& row : m) {
        if (row.size() != num_cols) {
            throw std::invalid_argument("ragged matrix passed to bareiss_echelon");
        }
    }
    Echelon out;
    BigInt prev = 1;
    BigInt t1;
    BigInt t2;
    std::size_t r = 0;
    for (std::size_t c = 0; c < num_cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && sgn(m[piv][c]) == 0) {
            ++piv;
        }
        if (piv == m.size()) {
            continue;
        }
        std::swap(m[piv], m[r]);
        const BigInt& p = m[r][c];
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            auto& row = m[i];
            for (std::size_t j = c + 1; j < num_cols; ++j) {
                mpz_mul(t1.get_mpz_t(), p.get_mpz_t(), row[j].get_mpz_t());
                mpz_mul(t2.get_mpz_t(), row[c].get_mpz_t(), m[r][j].get_mpz_t());
                mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                mpz_divexact(row[j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
            }
            row[c] = 0;
        }
        prev = p;
        out.pivot_cols.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

std::optional<std::vector<BigInt>> nullspace_vector(IntMatrix m, std::size_t num_cols)
{
    const auto ech = bareiss_echelon(std::move(m), num_cols);
    // first column without a pivot
    std::size_t free_col = 0;
    while (free_col < ech.pivot_cols.size() && ech.pivot_cols[free_col] == free_col) {
        ++free_col;
    }
    if (free_col >= num_cols) {
        return std::nullopt;
    }
    // Pivot rows 0..free_col-1 have pivots in columns 0..free_col-1; every
    // later pivot sits right of free_col, so those variables are zero.
    std::vector<Rational> x(free_col + 1);
    x[free_col] = 1;
    for (std::size_t i = free_col; i-- > 0;) {
        const auto& row = ech.rows[i];
        Rational acc;
        for (std::size_t j = i + 1; j <= free_col; ++j) {
            if (sgn(x[j]) != 0) {
                acc += Rational(row[j]) * x[j];
            }
        }
        x[i] = -acc / Rational(row[i]);
    }
    BigInt lcm = 1;
    for (const auto& v : x) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    }
    std::vector<BigInt> out(num_cols);
    BigInt g = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = x[j].get_num() * (lcm / x[j].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
    }
    for (auto& v : out) {
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    return out;
}

} // namespace tangle::linalg
