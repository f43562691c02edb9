#pragma once

/**
 * @file gf.hpp
 * @brief Arithmetic in the prime field GF(p), p < 2^31.
 *
 * Elements are plain residues wrapped in `Fe`; the modulus lives in `Field`
 * and every operation goes through it. Products are formed in 64 bits and
 * reduced, so no big-integer support is needed.
 */

#include <compare>
#include <cstdint>
#include <string>

#include "error.hpp"

namespace earc {

struct Fe {
    std::uint32_t value = 0;

    constexpr Fe() = default;
    constexpr explicit Fe(std::uint32_t v) : value(v) {}

    constexpr bool operator==(const Fe&) const = default;
    constexpr auto operator<=>(const Fe&) const = default;
    [[nodiscard]] constexpr bool is_zero() const noexcept { return value == 0; }
};

constexpr bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::uint64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0)
            return false;
    return true;
}

class Field {
public:
    static constexpr std::uint64_t max_modulus = (1ULL << 31);

    explicit Field(std::uint64_t p) : p_(static_cast<std::uint32_t>(p))
    {
        if (p >= max_modulus || !is_prime(p))
            throw Error(Errc::NotPrime, "modulus " + std::to_string(p) + " is not a prime below 2^31");
    }

    [[nodiscard]] std::uint32_t prime() const noexcept { return p_; }
    [[nodiscard]] std::uint32_t order() const noexcept { return p_; }

    /// Reduces any signed integer into [0, p).
    [[nodiscard]] Fe from_int(std::int64_t x) const noexcept
    {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0)
            r += p_;
        return Fe(static_cast<std::uint32_t>(r));
    }

    [[nodiscard]] Fe zero() const noexcept { return Fe(0); }
    [[nodiscard]] Fe one() const noexcept { return Fe(1 % p_); }

    [[nodiscard]] Fe add(Fe a, Fe b) const noexcept
    {
        std::uint64_t s = std::uint64_t(a.value) + b.value;
        return Fe(static_cast<std::uint32_t>(s >= p_ ? s - p_ : s));
    }

    [[nodiscard]] Fe sub(Fe a, Fe b) const noexcept
    {
        return Fe(a.value >= b.value ? a.value - b.value : p_ - (b.value - a.value));
    }

    [[nodiscard]] Fe neg(Fe a) const noexcept { return a.value == 0 ? a : Fe(p_ - a.value); }

    [[nodiscard]] Fe mul(Fe a, Fe b) const noexcept
    {
        return Fe(static_cast<std::uint32_t>((std::uint64_t(a.value) * b.value) % p_));
    }

    /// a^e by square-and-multiply; 0^0 = 1.
    [[nodiscard]] Fe pow(Fe a, std::uint64_t e) const noexcept
    {
        Fe result = one();
        Fe base = a;
        while (e > 0) {
            if (e & 1U)
                result = mul(result, base);
            base = mul(base, base);
            e >>= 1U;
        }
        return result;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    [[nodiscard]] Fe inv(Fe a) const
    {
        if (a.value == 0)
            throw Error(Errc::DivisionByZero, "inverse of zero in GF(" + std::to_string(p_) + ")");
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = p_, new_r = a.value;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        return from_int(t);
    }

    [[nodiscard]] Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    [[nodiscard]] bool contains(Fe a) const noexcept { return a.value < p_; }

    bool operator==(const Field&) const = default;

private:
    std::uint32_t p_;
};

} // namespace earc
