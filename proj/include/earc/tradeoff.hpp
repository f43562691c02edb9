#pragma once

/**
 * @file tradeoff.hpp
 * @brief Storage/repair-bandwidth tradeoff bounds, evaluated exactly.
 *
 *     classical:  sum_{i<k} min{(d-i) beta_c, alpha}               >= B
 *     quantum:    sum_{i<k} min{2(d-i) beta_q, d beta_q, alpha}    >= B
 *
 * For d >= 2k-2 the quantum bound is met with equality at
 * alpha = d beta_q = B/k.
 */

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace earc {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r)
{
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1)
        os << '/' << r.denominator();
    return os.str();
}

/// Accepts "a" or "a/b".
inline Rational parse_rational(const std::string& text)
{
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos)
            return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "not a rational number: '" + text + "'");
    }
}

namespace detail {

inline void check_regime(std::int64_t k, std::int64_t d)
{
    if (k < 1 || d < k)
        throw Error(Errc::InvalidRegime, "need 1 <= k <= d, got k=" + std::to_string(k) + " d=" + std::to_string(d));
}

} // namespace detail

inline Rational classical_bound_sum(std::int64_t k, std::int64_t d, Rational alpha, Rational betaC)
{
    detail::check_regime(k, d);
    Rational s = 0;
    for (std::int64_t i = 0; i < k; ++i)
        s += std::min(Rational(d - i) * betaC, alpha);
    return s;
}

inline Rational quantum_bound_sum(std::int64_t k, std::int64_t d, Rational alpha, Rational betaQ)
{
    detail::check_regime(k, d);
    Rational s = 0;
    for (std::int64_t i = 0; i < k; ++i)
        s += std::min({Rational(2 * (d - i)) * betaQ, Rational(d) * betaQ, alpha});
    return s;
}

inline bool classical_feasible(std::int64_t k, std::int64_t d, Rational alpha, Rational betaC, Rational B)
{
    return classical_bound_sum(k, d, alpha, betaC) >= B;
}

inline bool quantum_feasible(std::int64_t k, std::int64_t d, Rational alpha, Rational betaQ, Rational B)
{
    return quantum_bound_sum(k, d, alpha, betaQ) >= B;
}

struct TradeoffPoint {
    Rational alpha;
    Rational beta;
    std::int64_t d = 0;
    std::int64_t k = 0;
    Rational B;
    bool feasible = false;

    [[nodiscard]] Rational repair_bandwidth() const { return beta * d; }
};

/// (alpha, d beta_q) = (B/k, B/k); requires d >= 2k-2 and k | B.
inline TradeoffPoint optimal_point(std::int64_t k, std::int64_t d, std::int64_t B)
{
    detail::check_regime(k, d);
    if (d < 2 * k - 2)
        throw Error(Errc::RegimeViolation, "d=" + std::to_string(d) + " < 2k-2=" + std::to_string(2 * k - 2));
    if (B % k != 0)
        throw Error(Errc::Indivisible, "k=" + std::to_string(k) + " does not divide B=" + std::to_string(B));
    TradeoffPoint pt;
    pt.k = k;
    pt.d = d;
    pt.B = B;
    pt.alpha = Rational(B / k);
    pt.beta = Rational(B, k * d);
    if (quantum_bound_sum(k, d, pt.alpha, pt.beta) != pt.B)
        throw InternalError(Errc::RegimeViolation, "optimal point not tight");
    pt.feasible = true;
    return pt;
}

/// Per-helper-total download of a classical MSR code: (B/k) d / (d-k+1).
inline Rational msr_repair_bandwidth(std::int64_t k, std::int64_t d, Rational B)
{
    detail::check_regime(k, d);
    return B / k * Rational(d, d - k + 1);
}

/// Saving of classical MSR repair over downloading the whole file: k(d-k+1)/d.
inline Rational msr_reduction_factor(std::int64_t k, std::int64_t d)
{
    detail::check_regime(k, d);
    return Rational(k * (d - k + 1), d);
}

struct TradeoffRow {
    Rational beta;
    std::optional<std::int64_t> alphaMinClassical;
    std::optional<std::int64_t> alphaMinQuantum;
};

/// Smallest integer alpha in [0, B] meeting each bound; none if even alpha = B fails.
inline std::vector<TradeoffRow> tradeoff_table(std::int64_t k, std::int64_t d, std::int64_t B,
                                               std::span<const Rational> betas)
{
    detail::check_regime(k, d);
    std::vector<TradeoffRow> rows;
    for (const Rational& beta : betas) {
        TradeoffRow row{beta, std::nullopt, std::nullopt};
        for (std::int64_t a = 0; a <= B; ++a) {
            if (!row.alphaMinClassical && classical_feasible(k, d, a, beta, B))
                row.alphaMinClassical = a;
            if (!row.alphaMinQuantum && quantum_feasible(k, d, a, beta, B))
                row.alphaMinQuantum = a;
            if (row.alphaMinClassical && row.alphaMinQuantum)
                break;
        }
        rows.push_back(row);
    }
    return rows;
}

inline void write_tradeoff_csv(std::ostream& os, std::span<const TradeoffRow> rows)
{
    auto cell = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("none"); };
    os << "beta,alpha_min_classical,alpha_min_quantum\n";
    for (const auto& r : rows)
        os << to_string(r.beta) << ',' << cell(r.alphaMinClassical) << ',' << cell(r.alphaMinQuantum) << '\n';
}

} // namespace earc
