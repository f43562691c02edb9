#pragma once

/**
 * @file stabilizer.hpp
 * @brief Classical simulation of qudit CSS syndrome extraction.
 *
 * Three independent routes compute the syndrome of a generalized Pauli
 * error X(x)Z(z) against the stabilizer group generated by X-type rows of
 * H_X and Z-type rows of H_Z:
 *
 *  - `syndrome_linear`:      s_X = H_Z x, s_Z = H_X z.
 *  - `syndrome_symplectic`:  pairs every generator (a|b) with the error
 *                            (x|z) as b.x - a.z.
 *  - `syndrome_statevector`: prepares a codespace state over p^N amplitudes,
 *                            applies the error and reads every generator's
 *                            eigenvalue omega^s.
 *
 * Conventions: X|j> = |j+1>, Z|j> = omega^j |j>, omega = exp(2 pi i / p),
 * so ZX = omega XZ. A Z-type row h is the generator Z(h) = (0|h); an X-type
 * row g is the generator X(-g) = (-g|0). Both then report +<h,x> and +<g,z>,
 * exactly the linear map above.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace earc {

struct PauliError {
    Vec x;
    Vec z;

    bool operator==(const PauliError&) const = default;
};

struct Syndrome {
    Vec sX;  // from Z-type generators: H_Z x
    Vec sZ;  // from X-type generators: H_X z

    bool operator==(const Syndrome&) const = default;
};

class StabGroup {
public:
    /// Rejects generator sets that do not commute (HX HZ^T != 0).
    StabGroup(const Field& F, Mat xType, Mat zType)
        : field_(F), xType_(std::move(xType)), zType_(std::move(zType)), N_(xType_.cols())
    {
        if (xType_.cols() != zType_.cols())
            throw Error(Errc::DimensionMismatch, "X-type and Z-type generators act on different qudit counts");
        if (!mat_mul(F, xType_, zType_.transpose()).is_zero())
            throw Error(Errc::NonCommuting, "X-type and Z-type generators do not commute");
    }

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] const Mat& xType() const noexcept { return xType_; }
    [[nodiscard]] const Mat& zType() const noexcept { return zType_; }
    [[nodiscard]] std::size_t qudits() const noexcept { return N_; }

private:
    Field field_;
    Mat xType_;
    Mat zType_;
    std::size_t N_;
};

namespace detail {

inline void check_error_shape(const StabGroup& g, const PauliError& e)
{
    if (e.x.size() != g.qudits() || e.z.size() != g.qudits())
        throw Error(Errc::DimensionMismatch, "error acts on " + std::to_string(e.x.size()) + "/"
                                                 + std::to_string(e.z.size()) + " qudits, group on "
                                                 + std::to_string(g.qudits()));
}

} // namespace detail

inline Syndrome syndrome_linear(const StabGroup& g, const PauliError& e)
{
    detail::check_error_shape(g, e);
    const Field& F = g.field();
    return {mat_vec(F, g.zType(), e.x), mat_vec(F, g.xType(), e.z)};
}

/// One generator in symplectic form (a|b) = X(a)Z(b).
struct SymplecticRow {
    Vec a;
    Vec b;
};

/// b.x - a.z for generator (a|b) and error (x|z).
inline Fe symplectic_product(const Field& F, const SymplecticRow& gen, const PauliError& e)
{
    return F.sub(dot(F, gen.b, e.x), dot(F, gen.a, e.z));
}

/// Z-type rows first (as (0|h)), then X-type rows (as (-g|0)).
inline std::vector<SymplecticRow> symplectic_tableau(const StabGroup& g)
{
    const Field& F = g.field();
    const std::size_t N = g.qudits();
    std::vector<SymplecticRow> rows;
    for (std::size_t r = 0; r < g.zType().rows(); ++r)
        rows.push_back({Vec(N, F.zero()), g.zType().row_vec(r)});
    for (std::size_t r = 0; r < g.xType().rows(); ++r) {
        Vec a = g.xType().row_vec(r);
        for (auto& v : a)
            v = F.neg(v);
        rows.push_back({std::move(a), Vec(N, F.zero())});
    }
    return rows;
}

inline Syndrome syndrome_symplectic(const StabGroup& g, const PauliError& e)
{
    detail::check_error_shape(g, e);
    const Field& F = g.field();
    const auto tableau = symplectic_tableau(g);
    const std::size_t rz = g.zType().rows();
    Syndrome s;
    for (std::size_t r = 0; r < tableau.size(); ++r) {
        const Fe v = symplectic_product(F, tableau[r], e);
        (r < rz ? s.sX : s.sZ).push_back(v);
    }
    return s;
}

/**
 * Dense state of N qudits of prime dimension p. Basis index
 * sum_q j_q p^(N-1-q): qudit 0 is the most significant digit, so index
 * order is lexicographic order of (j_0, ..., j_{N-1}).
 */
class QuditState {
public:
    static constexpr std::size_t max_amplitudes = std::size_t{1} << 20;
    using amp = std::complex<double>;

    QuditState(const Field& F, std::size_t N) : p_(F.prime()), N_(N), strides_(N)
    {
        std::size_t dim = 1;
        for (std::size_t q = 0; q < N; ++q) {
            if (dim > max_amplitudes / p_)
                throw Error(Errc::TooLarge, std::to_string(p_) + "^" + std::to_string(N) + " exceeds 2^20 amplitudes");
            dim *= p_;
        }
        std::size_t s = 1;
        for (std::size_t q = N; q-- > 0;) {
            strides_[q] = s;
            s *= p_;
        }
        amps_.assign(dim, amp{});
        omega_.resize(p_);
        for (std::uint32_t m = 0; m < p_; ++m)
            omega_[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / p_);
    }

    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] const std::vector<amp>& amplitudes() const noexcept { return amps_; }

    void set_basis(std::size_t index)
    {
        std::fill(amps_.begin(), amps_.end(), amp{});
        amps_.at(index) = 1.0;
    }

    /// X(c): |j> -> |j + c>.
    void apply_x(std::span<const Fe> c)
    {
        std::vector<amp> out(amps_.size());
        for (std::size_t i = 0; i < amps_.size(); ++i)
            out[shift(i, c, 1)] = amps_[i];
        amps_.swap(out);
    }

    /// Z(c): |j> -> omega^(c.j) |j>.
    void apply_z(std::span<const Fe> c)
    {
        for (std::size_t i = 0; i < amps_.size(); ++i)
            amps_[i] *= omega_[phase_exponent(i, c)];
    }

    /// X(x) Z(z): Z acts first.
    void apply_pauli(const PauliError& e)
    {
        apply_z(e.z);
        apply_x(e.x);
    }

    /// (1/p) sum_t Z(h)^t: keeps components with h.j = 0.
    void project_z(std::span<const Fe> h)
    {
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if (phase_exponent(i, h) != 0)
                amps_[i] = 0.0;
    }

    /// (1/p) sum_t X(-g)^t: averages every amplitude over its g-orbit.
    void project_x(std::span<const Fe> g)
    {
        std::vector<amp> out(amps_.size());
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            amp acc{};
            for (std::uint32_t t = 0; t < p_; ++t)
                acc += amps_[shift(i, g, t)];
            out[i] = acc / static_cast<double>(p_);
        }
        amps_.swap(out);
    }

    [[nodiscard]] double norm() const
    {
        double s = 0;
        for (const auto& a : amps_)
            s += std::norm(a);
        return std::sqrt(s);
    }

    void normalize()
    {
        const double nr = norm();
        for (auto& a : amps_)
            a /= nr;
    }

    /// <phi| Z(h) |phi> for a normalized state.
    [[nodiscard]] amp expect_z(std::span<const Fe> h) const
    {
        amp s{};
        for (std::size_t i = 0; i < amps_.size(); ++i)
            s += std::norm(amps_[i]) * omega_[phase_exponent(i, h)];
        return s;
    }

    /// <phi| X(-g) |phi> for a normalized state.
    [[nodiscard]] amp expect_x_inverse(std::span<const Fe> g) const
    {
        amp s{};
        for (std::size_t i = 0; i < amps_.size(); ++i)
            s += std::conj(amps_[i]) * amps_[shift(i, g, 1)];
        return s;
    }

    /// |<this|other>| for normalized states; 1 means equal up to global phase.
    [[nodiscard]] double overlap(const QuditState& other) const
    {
        amp s{};
        for (std::size_t i = 0; i < amps_.size(); ++i)
            s += std::conj(amps_[i]) * other.amps_[i];
        return std::abs(s);
    }

    /// Exponent s of the nearest omega^s, and |value - omega^s|.
    [[nodiscard]] std::pair<std::uint32_t, double> nearest_root(amp value) const
    {
        double turns = std::arg(value) / (2.0 * std::numbers::pi);
        auto s = static_cast<std::int64_t>(std::llround(turns * p_));
        s %= static_cast<std::int64_t>(p_);
        if (s < 0)
            s += p_;
        const auto e = static_cast<std::uint32_t>(s);
        return {e, std::abs(value - omega_[e])};
    }

private:
    // Index of |j + t*c>.
    [[nodiscard]] std::size_t shift(std::size_t index, std::span<const Fe> c, std::uint32_t t) const
    {
        std::size_t out = 0;
        for (std::size_t q = 0; q < N_; ++q) {
            const std::uint64_t digit = (index / strides_[q]) % p_;
            const std::uint64_t nd = (digit + std::uint64_t(t) * c[q].value) % p_;
            out += nd * strides_[q];
        }
        return out;
    }

    // (c.j) mod p for basis index j.
    [[nodiscard]] std::uint32_t phase_exponent(std::size_t index, std::span<const Fe> c) const
    {
        std::uint64_t s = 0;
        for (std::size_t q = 0; q < N_; ++q) {
            const std::uint64_t digit = (index / strides_[q]) % p_;
            s = (s + digit * c[q].value) % p_;
        }
        return static_cast<std::uint32_t>(s);
    }

    std::uint32_t p_;
    std::size_t N_;
    std::vector<std::size_t> strides_;
    std::vector<amp> amps_;
    std::vector<amp> omega_;
};

/// Projects |basis> onto the codespace. Throws ZeroProjection if orthogonal.
inline QuditState prepare_codespace_state(const StabGroup& g, std::size_t basisIndex)
{
    QuditState st(g.field(), g.qudits());
    st.set_basis(basisIndex);
    for (std::size_t r = 0; r < g.zType().rows(); ++r)
        st.project_z(g.zType().row(r));
    for (std::size_t r = 0; r < g.xType().rows(); ++r)
        st.project_x(g.xType().row(r));
    if (st.norm() < 1e-12)
        throw Error(Errc::ZeroProjection, "basis state " + std::to_string(basisIndex) + " is orthogonal to the codespace");
    st.normalize();
    return st;
}

struct StatevectorSyndrome {
    Syndrome syndrome;
    double maxResidual = 0.0;
    std::size_t basisIndex = 0;  // basis state that seeded the codespace state
};

/**
 * Literal simulation: seed a codespace state from the first basis state at
 * or after `firstBasis` (lexicographic) that survives projection, apply the
 * error, and read each generator's eigenvalue exponent.
 */
inline StatevectorSyndrome syndrome_statevector(const StabGroup& g, const PauliError& e, std::size_t firstBasis = 0)
{
    detail::check_error_shape(g, e);
    QuditState probe(g.field(), g.qudits());  // size check before any work
    std::optional<QuditState> st;
    std::size_t idx = firstBasis;
    for (; idx < probe.dimension(); ++idx) {
        try {
            st.emplace(prepare_codespace_state(g, idx));
            break;
        } catch (const Error& err) {
            if (err.code() != Errc::ZeroProjection)
                throw;
        }
    }
    if (!st)
        throw Error(Errc::ZeroProjection, "no basis state at or after " + std::to_string(firstBasis) + " projects into the codespace");

    st->apply_pauli(e);
    StatevectorSyndrome out;
    out.basisIndex = idx;
    for (std::size_t r = 0; r < g.zType().rows(); ++r) {
        auto [s, res] = st->nearest_root(st->expect_z(g.zType().row(r)));
        out.syndrome.sX.push_back(Fe(s));
        out.maxResidual = std::max(out.maxResidual, res);
    }
    for (std::size_t r = 0; r < g.xType().rows(); ++r) {
        auto [s, res] = st->nearest_root(st->expect_x_inverse(g.xType().row(r)));
        out.syndrome.sZ.push_back(Fe(s));
        out.maxResidual = std::max(out.maxResidual, res);
    }
    return out;
}

/**
 * Random commuting pair: H_X is a random full-rank rX x N matrix and H_Z
 * draws rZ random combinations of a basis of ker(H_X). Requires
 * rX + rZ <= N.
 */
inline StabGroup random_css_group(const Field& F, std::size_t N, std::size_t rX, std::size_t rZ, SplitMix64& rng)
{
    if (rX + rZ > N)
        throw Error(Errc::DimensionMismatch, "rX + rZ must not exceed N");
    Mat HX(rX, N);
    do {
        for (std::size_t i = 0; i < rX; ++i)
            for (std::size_t j = 0; j < N; ++j)
                HX(i, j) = rng.element(F);
    } while (rank(F, HX) != rX);
    const Mat kernel = null_space(F, HX);
    Mat R(rZ, kernel.rows());
    for (std::size_t i = 0; i < rZ; ++i)
        for (std::size_t j = 0; j < kernel.rows(); ++j)
            R(i, j) = rng.element(F);
    Mat HZ = kernel.rows() ? mat_mul(F, R, kernel) : Mat(rZ, N);
    return StabGroup(F, std::move(HX), std::move(HZ));
}

inline PauliError random_pauli(const Field& F, std::size_t N, SplitMix64& rng)
{
    return {rng.elements(F, N), rng.elements(F, N)};
}

} // namespace earc
