#pragma once

/**
 * @file rng.hpp
 * @brief SplitMix64, the generator behind every seeded draw in the library.
 *
 * State transition and output (all arithmetic mod 2^64):
 *
 *     state += 0x9E3779B97F4A7C15
 *     z = state
 *     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *     return z ^ (z >> 31)
 *
 * `below(n)` rejects draws in the short top interval so every residue is
 * equally likely; ports must reproduce that rejection to match transcripts.
 */

#include <cstdint>
#include <vector>

#include "gf.hpp"

namespace earc {

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept { return next(); }

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) noexcept
    {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold)
                return r % n;
        }
    }

    Fe element(const Field& F) noexcept { return Fe(static_cast<std::uint32_t>(below(F.prime()))); }

    Fe nonzero_element(const Field& F) noexcept
    {
        return Fe(static_cast<std::uint32_t>(1 + below(F.prime() - 1)));
    }

    std::vector<Fe> elements(const Field& F, std::size_t count)
    {
        std::vector<Fe> out(count);
        for (auto& x : out)
            x = element(F);
        return out;
    }

    [[nodiscard]] std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

} // namespace earc
