#pragma once

/**
 * @file pmcode.hpp
 * @brief Product-matrix storage code: parameter validation, message packing,
 * per-node encoding and any-k retrieval.
 *
 * A file of B symbols is split into C(d, 2k-2) sub-files (one when
 * d = 2k-2). Each sub-file is a pair of product-matrix instances
 * M = [S1; S2] and M' = [S1'; S2'] with symmetric alpha0 x alpha0 blocks,
 * alpha0 = k - 1. Node i stores v_i^T M and v_i^T M', where
 * v_i^T = [vbar_i^T, lambda_i vbar_i^T] is row i of the n x 2*alpha0
 * Vandermonde matrix on the evaluation points.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "matrix.hpp"

namespace earc {

constexpr std::uint64_t binomial(std::uint64_t n, std::uint64_t r) noexcept
{
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= r; ++i)
        c = c * (n - r + i) / i;
    return c;
}

/// 1-based node identifier.
using NodeId = std::size_t;

struct SystemParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t d = 0;
    Field field{2};
    Vec evalPoints;            // v_1..v_n
    Vec lambda;                // lambda_i = v_i^alpha0
    std::size_t alpha0 = 0;    // k - 1
    std::size_t subfiles = 1;  // C(d, 2k-2)

    /// Symbols in one symmetric block pair (S1, S2): alpha0 (alpha0 + 1).
    [[nodiscard]] std::size_t per_instance_symbols() const noexcept { return alpha0 * (alpha0 + 1); }
    /// Symbols in one sub-file (both instances).
    [[nodiscard]] std::size_t subfile_symbols() const noexcept { return 2 * per_instance_symbols(); }
    /// Total file size B.
    [[nodiscard]] std::size_t B() const noexcept { return subfile_symbols() * subfiles; }
    /// Field elements stored per node across all sub-files.
    [[nodiscard]] std::size_t alpha() const noexcept { return 2 * alpha0 * subfiles; }
    /// Helpers used by one product-matrix repair.
    [[nodiscard]] std::size_t instance_helpers() const noexcept { return 2 * k - 2; }

    [[nodiscard]] Fe point(NodeId i) const { return evalPoints.at(i - 1); }
    [[nodiscard]] Fe lam(NodeId i) const { return lambda.at(i - 1); }

    /// vbar_i = [1, v_i, ..., v_i^(alpha0-1)].
    [[nodiscard]] Vec vbar(NodeId i) const
    {
        Vec out(alpha0);
        Fe x = field.one();
        for (auto& e : out) {
            e = x;
            x = field.mul(x, point(i));
        }
        return out;
    }

    /// n x 2*alpha0 Vandermonde on the evaluation points.
    [[nodiscard]] Mat V() const { return vandermonde(field, evalPoints, 2 * alpha0); }
};

namespace detail {

inline bool all_distinct(std::span<const Fe> xs)
{
    std::set<Fe> seen(xs.begin(), xs.end());
    return seen.size() == xs.size();
}

inline Vec lambdas(const Field& F, std::span<const Fe> pts, std::size_t alpha0)
{
    Vec out;
    out.reserve(pts.size());
    for (Fe v : pts)
        out.push_back(F.pow(v, alpha0));
    return out;
}

} // namespace detail

/**
 * Validates (n, k, d, p) for the regime k >= 2, 2k-2 <= d < n, p prime
 * with p >= n + 1, and fixes the evaluation points.
 *
 * Without explicit points v_i = i is tried first; if two lambda_i collide,
 * points are taken greedily from 1, 2, ..., p-1, skipping any whose lambda
 * is already used. NoValidPoints means GF(p) has fewer than n distinct
 * alpha0-th powers and a larger prime is needed.
 */
inline SystemParams make_params(std::size_t n, std::size_t k, std::size_t d, std::uint64_t p,
                                std::optional<Vec> evalPoints = std::nullopt)
{
    auto bad = [](const std::string& why) { return Error(Errc::InvalidParams, why); };
    if (k < 2)
        throw bad("k must be at least 2");
    if (d < 2 * k - 2)
        throw bad("d must be at least 2k-2");
    if (d >= n)
        throw bad("d must be smaller than n");
    if (!is_prime(p) || p >= Field::max_modulus)
        throw bad("p = " + std::to_string(p) + " is not a prime below 2^31");
    if (p < n + 1)
        throw bad("p must be at least n+1");

    SystemParams sp;
    sp.n = n;
    sp.k = k;
    sp.d = d;
    sp.field = Field(p);
    sp.alpha0 = k - 1;
    sp.subfiles = binomial(d, 2 * k - 2);
    const Field& F = sp.field;

    if (evalPoints) {
        const Vec& pts = *evalPoints;
        if (pts.size() != n)
            throw bad("expected " + std::to_string(n) + " evaluation points");
        for (Fe v : pts)
            if (v.is_zero() || !F.contains(v))
                throw bad("evaluation points must be nonzero field elements");
        if (!detail::all_distinct(pts))
            throw bad("evaluation points must be distinct");
        Vec lam = detail::lambdas(F, pts, sp.alpha0);
        if (!detail::all_distinct(lam))
            throw bad("lambda_i = v_i^(k-1) must be distinct");
        sp.evalPoints = pts;
        sp.lambda = std::move(lam);
        return sp;
    }

    Vec pts(n);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = Fe(static_cast<std::uint32_t>(i + 1));
    Vec lam = detail::lambdas(F, pts, sp.alpha0);
    if (!detail::all_distinct(lam)) {
        pts.clear();
        lam.clear();
        std::set<Fe> used;
        for (std::uint32_t v = 1; v < F.prime() && pts.size() < n; ++v) {
            const Fe l = F.pow(Fe(v), sp.alpha0);
            if (used.insert(l).second) {
                pts.push_back(Fe(v));
                lam.push_back(l);
            }
        }
        if (pts.size() < n)
            throw Error(Errc::NoValidPoints, "GF(" + std::to_string(p) + ") has only "
                                                 + std::to_string(pts.size()) + " distinct "
                                                 + std::to_string(sp.alpha0) + "-th powers, need "
                                                 + std::to_string(n));
    }
    sp.evalPoints = std::move(pts);
    sp.lambda = std::move(lam);
    return sp;
}

struct MessagePair {
    Mat S1, S2, S1p, S2p;

    [[nodiscard]] Mat M() const { return vstack(S1, S2); }
    [[nodiscard]] Mat Mp() const { return vstack(S1p, S2p); }

    bool operator==(const MessagePair&) const = default;
};

/// Row vectors v_i^T M and v_i^T M' held by node i for one sub-file.
struct NodeStorage {
    NodeId nodeId = 0;
    Vec rowM;
    Vec rowMp;

    bool operator==(const NodeStorage&) const = default;
};

/// [subfile][node] storage of a whole file.
using FileStorage = std::vector<std::vector<NodeStorage>>;

namespace detail {

inline Mat fill_symmetric(std::span<const Fe> syms, std::size_t a0, std::size_t& pos)
{
    Mat s(a0, a0);
    for (std::size_t r = 0; r < a0; ++r)
        for (std::size_t c = r; c < a0; ++c) {
            s(r, c) = syms[pos];
            s(c, r) = syms[pos];
            ++pos;
        }
    return s;
}

inline void read_upper(const Mat& s, Vec& out)
{
    for (std::size_t r = 0; r < s.rows(); ++r)
        for (std::size_t c = r; c < s.cols(); ++c)
            out.push_back(s(r, c));
}

} // namespace detail

/// Packs one sub-file's symbols: upper triangles of S1, S2, S1', S2' in that
/// order, row-major within each triangle.
inline MessagePair pack_message(const SystemParams& sp, std::span<const Fe> symbols)
{
    if (symbols.size() != sp.subfile_symbols())
        throw Error(Errc::WrongLength, "expected " + std::to_string(sp.subfile_symbols()) + " symbols, got "
                                           + std::to_string(symbols.size()));
    for (Fe s : symbols)
        if (!sp.field.contains(s))
            throw Error(Errc::WrongLength, "symbol outside the field");
    std::size_t pos = 0;
    MessagePair m;
    m.S1 = detail::fill_symmetric(symbols, sp.alpha0, pos);
    m.S2 = detail::fill_symmetric(symbols, sp.alpha0, pos);
    m.S1p = detail::fill_symmetric(symbols, sp.alpha0, pos);
    m.S2p = detail::fill_symmetric(symbols, sp.alpha0, pos);
    return m;
}

inline Vec unpack_message(const MessagePair& m)
{
    Vec out;
    detail::read_upper(m.S1, out);
    detail::read_upper(m.S2, out);
    detail::read_upper(m.S1p, out);
    detail::read_upper(m.S2p, out);
    return out;
}

/// Splits B symbols into consecutive sub-file blocks.
inline std::vector<MessagePair> pack_file(const SystemParams& sp, std::span<const Fe> symbols)
{
    if (symbols.size() != sp.B())
        throw Error(Errc::WrongLength,
                    "expected " + std::to_string(sp.B()) + " symbols, got " + std::to_string(symbols.size()));
    std::vector<MessagePair> out;
    out.reserve(sp.subfiles);
    const std::size_t len = sp.subfile_symbols();
    for (std::size_t t = 0; t < sp.subfiles; ++t)
        out.push_back(pack_message(sp, symbols.subspan(t * len, len)));
    return out;
}

inline Vec unpack_file(std::span<const MessagePair> parts)
{
    Vec out;
    for (const auto& m : parts) {
        Vec v = unpack_message(m);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

/// C = blkdiag(V, V) [M; M']; node i receives rows i and n+i.
inline std::vector<NodeStorage> encode(const SystemParams& sp, const MessagePair& msg)
{
    const Field& F = sp.field;
    const Mat V = sp.V();
    const Mat C = mat_mul(F, blkdiag({V, V}), vstack(msg.M(), msg.Mp()));
    std::vector<NodeStorage> nodes(sp.n);
    for (std::size_t i = 0; i < sp.n; ++i) {
        nodes[i].nodeId = i + 1;
        nodes[i].rowM = C.row_vec(i);
        nodes[i].rowMp = C.row_vec(sp.n + i);
    }
    return nodes;
}

inline FileStorage encode_file(const SystemParams& sp, std::span<const Fe> symbols)
{
    FileStorage out;
    for (const auto& m : pack_file(sp, symbols))
        out.push_back(encode(sp, m));
    return out;
}

namespace detail {

struct SymmetricPair {
    Mat S1, S2;
};

/*
 * Recovers (S1, S2) from k rows C = Phi S1 + Lam Phi S2, Phi being the k x
 * alpha0 Vandermonde of the chosen nodes and Lam their lambda_i.
 *
 * P = C Phi^T = P1 + Lam P2 with P1 = Phi S1 Phi^T and P2 = Phi S2 Phi^T
 * both symmetric, so each off-diagonal pair (P_ij, P_ji) is a 2x2 system in
 * (P1_ij, P2_ij). Column j of P1 minus its diagonal gives S1 phi_j through a
 * (k-1) x (k-1) Vandermonde solve, and alpha0 such columns give S1.
 */
inline SymmetricPair decode_instance(const Field& F, const Mat& phi, std::span<const Fe> lam, const Mat& C)
{
    const std::size_t k = phi.rows();
    const std::size_t a0 = phi.cols();
    const Mat P = mat_mul(F, C, phi.transpose());
    Mat P1(k, k), P2(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const Fe dl = F.sub(lam[i], lam[j]);
            if (dl.is_zero())
                throw InternalError(Errc::Singular, "repeated lambda among retrieval nodes");
            const Fe b = F.div(F.sub(P(i, j), P(j, i)), dl);
            const Fe a = F.sub(P(i, j), F.mul(lam[i], b));
            P1(i, j) = P1(j, i) = a;
            P2(i, j) = P2(j, i) = b;
        }

    auto recover = [&](const Mat& Pm) {
        // Columns j = 0..a0-1 of S * Phi^T, stacked as rows.
        Mat SPhiT_rows(a0, a0);
        for (std::size_t j = 0; j < a0; ++j) {
            std::vector<std::size_t> others;
            for (std::size_t i = 0; i < k; ++i)
                if (i != j)
                    others.push_back(i);
            const Mat A = phi.select_rows(others);
            Mat rhs(others.size(), 1);
            for (std::size_t r = 0; r < others.size(); ++r)
                rhs(r, 0) = Pm(others[r], j);
            const Mat x = solve(F, A, rhs);
            for (std::size_t r = 0; r < a0; ++r)
                SPhiT_rows(j, r) = x(r, 0);
        }
        // Phi_sub S^T = (S Phi_sub^T)^T, and S is symmetric.
        std::vector<std::size_t> first(a0);
        for (std::size_t j = 0; j < a0; ++j)
            first[j] = j;
        return solve(F, phi.select_rows(first), SPhiT_rows);
    };
    return {recover(P1), recover(P2)};
}

} // namespace detail

/// Reconstructs one sub-file's message from exactly k nodes.
inline MessagePair retrieve(const SystemParams& sp, std::span<const NodeStorage> shares)
{
    if (shares.size() != sp.k)
        throw Error(Errc::BadShareSet,
                    "need exactly " + std::to_string(sp.k) + " shares, got " + std::to_string(shares.size()));
    std::set<NodeId> ids;
    for (const auto& s : shares) {
        if (s.nodeId < 1 || s.nodeId > sp.n)
            throw Error(Errc::BadShareSet, "node id " + std::to_string(s.nodeId) + " out of range");
        if (!ids.insert(s.nodeId).second)
            throw Error(Errc::BadShareSet, "duplicate node id " + std::to_string(s.nodeId));
        if (s.rowM.size() != sp.alpha0 || s.rowMp.size() != sp.alpha0)
            throw Error(Errc::BadShareSet, "share of node " + std::to_string(s.nodeId) + " has wrong length");
    }
    const Field& F = sp.field;
    const std::size_t k = sp.k;
    Vec pts(k), lam(k);
    Mat C(k, sp.alpha0), Cp(k, sp.alpha0);
    for (std::size_t r = 0; r < k; ++r) {
        pts[r] = sp.point(shares[r].nodeId);
        lam[r] = sp.lam(shares[r].nodeId);
        std::copy(shares[r].rowM.begin(), shares[r].rowM.end(), C.row(r).begin());
        std::copy(shares[r].rowMp.begin(), shares[r].rowMp.end(), Cp.row(r).begin());
    }
    const Mat phi = vandermonde(F, pts, sp.alpha0);
    auto first = detail::decode_instance(F, phi, lam, C);
    auto second = detail::decode_instance(F, phi, lam, Cp);
    return {std::move(first.S1), std::move(first.S2), std::move(second.S1), std::move(second.S2)};
}

/// Reconstructs the whole file from the listed nodes' storage.
inline Vec retrieve_file(const SystemParams& sp, const FileStorage& storage, std::span<const NodeId> nodes)
{
    std::vector<MessagePair> parts;
    for (const auto& sub : storage) {
        std::vector<NodeStorage> shares;
        for (NodeId id : nodes) {
            if (id < 1 || id > sub.size())
                throw Error(Errc::BadShareSet, "node id " + std::to_string(id) + " out of range");
            shares.push_back(sub[id - 1]);
        }
        parts.push_back(retrieve(sp, shares));
    }
    return unpack_file(parts);
}

} // namespace earc
