#pragma once

/**
 * @file repair.hpp
 * @brief Entanglement-assisted exact repair of one failed node.
 *
 * 1. The helpers share a state in the code space of `build_repair_css`.
 * 2. Helper s_j computes yX_j = Lam1_j v_{s_j}^T M vbar_f and
 *    yZ_j = Lam2_j v_{s_j}^T M' vbar_f from its own storage and applies
 *    X(yX_j) Z(yZ_j) to its qudit; one qudit per helper is sent.
 * 3. The newcomer measures the stabilizers. s_Z = H_X yZ and s_X = H_Z yX
 *    equal v_f^T M' and v_f^T M; swapping the two blocks gives back the
 *    failed node's content.
 *
 * For d > 2k-2 the file is split into C(d, 2k-2) sub-files and sub-file t is
 * repaired from the t-th (2k-2)-subset of the helpers in colex order.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "css.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "pmcode.hpp"
#include "stabilizer.hpp"
#include "tradeoff.hpp"

namespace earc {

enum class SyndromeMode { Linear, Symplectic, Statevector };

constexpr std::string_view to_string(SyndromeMode m) noexcept
{
    switch (m) {
    case SyndromeMode::Linear: return "linear";
    case SyndromeMode::Symplectic: return "symplectic";
    case SyndromeMode::Statevector: return "statevector";
    }
    return "linear";
}

inline SyndromeMode parse_mode(std::string_view s)
{
    if (s == "linear")
        return SyndromeMode::Linear;
    if (s == "symplectic")
        return SyndromeMode::Symplectic;
    if (s == "statevector")
        return SyndromeMode::Statevector;
    throw Error(Errc::ParseError, "unknown mode '" + std::string(s) + "'");
}

/// Residual above which a state-vector eigenvalue is not accepted as a root of unity.
inline constexpr double statevector_tolerance = 1e-6;

struct HelperPayload {
    NodeId helperId = 0;
    Fe yX;
    Fe yZ;
    std::size_t quditsSent = 1;

    bool operator==(const HelperPayload&) const = default;
};

struct RepairTranscript {
    NodeId failedNode = 0;
    std::vector<NodeId> helpers;
    SyndromeMode mode = SyndromeMode::Linear;
    RepairCSS css;
    std::vector<HelperPayload> payloads;
    Syndrome syndrome;
    NodeStorage regenerated;
    std::size_t quditTotal = 0;

    bool operator==(const RepairTranscript&) const = default;
};

/// Computed from the helper's own storage and public parameters only.
inline HelperPayload helper_encode(const SystemParams& sp, const RepairCSS& css, const NodeStorage& storage)
{
    const auto it = std::find(css.helpers.begin(), css.helpers.end(), storage.nodeId);
    if (it == css.helpers.end())
        throw Error(Errc::NotAHelper, "node " + std::to_string(storage.nodeId) + " is not a helper");
    const auto j = static_cast<std::size_t>(it - css.helpers.begin());
    const Field& F = sp.field;
    const Vec vf = sp.vbar(css.failedNode);
    HelperPayload out;
    out.helperId = storage.nodeId;
    out.yX = F.mul(css.Lam1[j], dot(F, storage.rowM, vf));
    out.yZ = F.mul(css.Lam2[j], dot(F, storage.rowMp, vf));
    return out;
}

inline bool mode_available(const SystemParams& sp, SyndromeMode mode)
{
    if (mode != SyndromeMode::Statevector)
        return true;
    std::size_t dim = 1;
    for (std::size_t i = 0; i < sp.instance_helpers(); ++i) {
        if (dim > QuditState::max_amplitudes / sp.field.prime())
            return false;
        dim *= sp.field.prime();
    }
    return true;
}

/**
 * Repairs one sub-file. `storage` holds all n nodes of that sub-file (node i
 * at index i-1); only the helpers' entries feed the protocol, and the failed
 * node's entry is used solely to assert exact regeneration.
 */
inline RepairTranscript run_repair(const SystemParams& sp, std::span<const NodeStorage> storage, NodeId f,
                                   std::vector<NodeId> helpers, std::optional<Vec> u = std::nullopt,
                                   SyndromeMode mode = SyndromeMode::Linear)
{
    if (storage.size() != sp.n)
        throw Error(Errc::InvalidHelperSet, "storage must cover all " + std::to_string(sp.n) + " nodes");
    if (!mode_available(sp, mode))
        throw Error(Errc::ModeUnavailable, std::string(to_string(mode)) + " needs p^d <= 2^20");

    RepairTranscript tr;
    tr.css = build_repair_css(sp, f, std::move(helpers), std::move(u));
    tr.failedNode = f;
    tr.helpers = tr.css.helpers;
    tr.mode = mode;

    PauliError err;
    for (NodeId h : tr.helpers) {
        const NodeStorage& s = storage[h - 1];
        if (s.nodeId != h)
            throw Error(Errc::InvalidHelperSet, "storage slot " + std::to_string(h) + " holds node " + std::to_string(s.nodeId));
        tr.payloads.push_back(helper_encode(sp, tr.css, s));
        err.x.push_back(tr.payloads.back().yX);
        err.z.push_back(tr.payloads.back().yZ);
    }

    const StabGroup group(sp.field, tr.css.HX, tr.css.HZ);
    switch (mode) {
    case SyndromeMode::Linear:
        tr.syndrome = syndrome_linear(group, err);
        break;
    case SyndromeMode::Symplectic:
        tr.syndrome = syndrome_symplectic(group, err);
        break;
    case SyndromeMode::Statevector: {
        auto sv = syndrome_statevector(group, err);
        if (sv.maxResidual >= statevector_tolerance)
            throw InternalError(Errc::RegenerationMismatch, "state-vector eigenvalue residual " + std::to_string(sv.maxResidual));
        tr.syndrome = std::move(sv.syndrome);
        break;
    }
    }

    // The measured order is [s_Z; s_X] = [v_f^T M'; v_f^T M]; swap the blocks.
    tr.regenerated = NodeStorage{f, tr.syndrome.sX, tr.syndrome.sZ};
    tr.quditTotal = 0;
    for (const auto& pl : tr.payloads)
        tr.quditTotal += pl.quditsSent;

    if (storage[f - 1].nodeId == f && tr.regenerated != storage[f - 1])
        throw InternalError(Errc::RegenerationMismatch, "node " + std::to_string(f) + " not exactly regenerated");
    return tr;
}

struct SubfilePlan {
    /// Each entry lists helper slot indices (0-based positions in the sorted helper set).
    std::vector<std::vector<std::size_t>> subsets;
    std::size_t perHelperQudits = 0;
};

/// All (2k-2)-subsets of d helper slots in colex order.
inline SubfilePlan plan_subfiles(const SystemParams& sp)
{
    const std::size_t r = sp.instance_helpers();
    const std::size_t d = sp.d;
    SubfilePlan plan;
    std::vector<std::size_t> cur(r);
    for (std::size_t i = 0; i < r; ++i)
        cur[i] = i;
    // Colex successor: bump the lowest position that can move, reset the ones below it.
    for (;;) {
        plan.subsets.push_back(cur);
        std::size_t i = 0;
        while (i < r && cur[i] + 1 == (i + 1 < r ? cur[i + 1] : d))
            ++i;
        if (i == r)
            break;
        ++cur[i];
        for (std::size_t j = 0; j < i; ++j)
            cur[j] = j;
    }
    plan.perHelperQudits = binomial(d - 1, r - 1);
    return plan;
}

struct ExtendedTranscript {
    NodeId failedNode = 0;
    std::vector<NodeId> helpers;
    SyndromeMode mode = SyndromeMode::Linear;
    std::vector<RepairTranscript> subfiles;
    std::vector<NodeStorage> regenerated;  // one per sub-file
    std::size_t quditTotal = 0;
    std::map<NodeId, std::size_t> quditsPerHelper;
};

/// Repairs node f from d helpers, one product-matrix repair per sub-file.
inline ExtendedTranscript run_repair_extended(const SystemParams& sp, const FileStorage& storage, NodeId f,
                                              std::vector<NodeId> helpers, SyndromeMode mode = SyndromeMode::Linear,
                                              std::optional<Vec> u = std::nullopt)
{
    if (helpers.size() != sp.d)
        throw Error(Errc::InvalidHelperSet, "need " + std::to_string(sp.d) + " helpers, got " + std::to_string(helpers.size()));
    if (storage.size() != sp.subfiles)
        throw Error(Errc::InvalidHelperSet, "storage has " + std::to_string(storage.size()) + " sub-files, expected "
                                                + std::to_string(sp.subfiles));
    std::sort(helpers.begin(), helpers.end());
    if (std::adjacent_find(helpers.begin(), helpers.end()) != helpers.end())
        throw Error(Errc::InvalidHelperSet, "duplicate helper");

    const SubfilePlan plan = plan_subfiles(sp);
    ExtendedTranscript out;
    out.failedNode = f;
    out.helpers = helpers;
    out.mode = mode;
    for (std::size_t t = 0; t < plan.subsets.size(); ++t) {
        std::vector<NodeId> chosen;
        for (std::size_t slot : plan.subsets[t])
            chosen.push_back(helpers[slot]);
        out.subfiles.push_back(run_repair(sp, storage[t], f, chosen, u, mode));
        const auto& tr = out.subfiles.back();
        out.regenerated.push_back(tr.regenerated);
        out.quditTotal += tr.quditTotal;
        for (const auto& pl : tr.payloads)
            out.quditsPerHelper[pl.helperId] += pl.quditsSent;
    }
    return out;
}

struct BandwidthReport {
    Rational alpha;
    Rational dBetaQ;
    Rational BOverK;
    Rational classicalMSRBandwidth;
};

inline BandwidthReport bandwidth_report(const SystemParams& sp, std::size_t quditTotal)
{
    const auto k = static_cast<std::int64_t>(sp.k);
    const auto d = static_cast<std::int64_t>(sp.d);
    const Rational B(static_cast<std::int64_t>(sp.B()));
    return {Rational(static_cast<std::int64_t>(sp.alpha())), Rational(static_cast<std::int64_t>(quditTotal)), B / k,
            msr_repair_bandwidth(k, d, B)};
}

inline BandwidthReport bandwidth_report(const SystemParams& sp, const RepairTranscript& tr)
{
    return bandwidth_report(sp, tr.quditTotal);
}

inline BandwidthReport bandwidth_report(const SystemParams& sp, const ExtendedTranscript& tr)
{
    return bandwidth_report(sp, tr.quditTotal);
}

} // namespace earc
