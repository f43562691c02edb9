#pragma once

/**
 * @file css.hpp
 * @brief The CSS code the helpers share during one repair.
 *
 * For failed node f and sorted helpers s_1..s_D (D = 2k-2):
 *
 *     w_j      = (prod_{i != j} (v_{s_j} - v_{s_i}))^{-1}      GRS dual weights
 *     u'_j     = w_j / u_j
 *     Lam1     = diag(u)  (Lbar - lambda_f I)^{-1}
 *     Lam2     = diag(u') (Lbar - lambda_f I)^{-1}
 *     H_X      = [I | lambda_f I] (Lam2 Vt)^{-1}
 *     H_Z      = [I | lambda_f I] (Lam1 Vt)^{-1}
 *
 * with Vt the D x D Vandermonde on the helper points and
 * Lbar = diag(lambda_{s_1}, ..., lambda_{s_D}). Because u .* u' = w
 * annihilates every monomial of degree <= D-2 on the helper points,
 * H_X H_Z^T = 0 and the pair defines a valid CSS code.
 */

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "matrix.hpp"
#include "pmcode.hpp"

namespace earc {

/// w_j = (prod_{i != j} (points_j - points_i))^{-1}.
inline Vec grs_dual_weights(const Field& F, std::span<const Fe> points)
{
    Vec w(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        Fe prod = F.one();
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i == j)
                continue;
            const Fe diff = F.sub(points[j], points[i]);
            if (diff.is_zero())
                throw Error(Errc::RepeatedPoint, "point " + std::to_string(points[j].value) + " repeated");
            prod = F.mul(prod, diff);
        }
        w[j] = F.inv(prod);
    }
    return w;
}

/// True iff HX * HZ^T is the zero matrix.
inline bool check_dual_containment(const Field& F, const Mat& HX, const Mat& HZ)
{
    if (HX.cols() != HZ.cols())
        throw Error(Errc::DimensionMismatch, "H_X has " + std::to_string(HX.cols()) + " columns, H_Z has "
                                                 + std::to_string(HZ.cols()));
    return mat_mul(F, HX, HZ.transpose()).is_zero();
}

struct RepairCSS {
    NodeId failedNode = 0;
    std::vector<NodeId> helpers;
    Mat HX;
    Mat HZ;
    Vec Lam1;
    Vec Lam2;
    Vec u;
    Vec uPrime;
    Fe lamF;
    Mat Vtilde;

    bool operator==(const RepairCSS&) const = default;
};

/**
 * Builds the CSS matrices directly from evaluation points. Only the failed
 * node's point and the helpers' points matter; `build_repair_css` is the
 * node-id front end.
 */
inline RepairCSS build_css_from_points(const Field& F, std::size_t alpha0, Fe failedPoint,
                                       std::span<const Fe> helperPoints, std::optional<Vec> u = std::nullopt)
{
    const std::size_t D = helperPoints.size();
    if (D != 2 * alpha0)
        throw Error(Errc::InvalidHelperSet,
                    "need " + std::to_string(2 * alpha0) + " helpers, got " + std::to_string(D));
    Vec uu = u ? *u : Vec(D, F.one());
    if (uu.size() != D)
        throw Error(Errc::InvalidHelperSet, "u has length " + std::to_string(uu.size()));
    for (Fe x : uu)
        if (x.is_zero() || !F.contains(x))
            throw Error(Errc::ZeroU, "u entries must be nonzero field elements");

    RepairCSS css;
    css.lamF = F.pow(failedPoint, alpha0);
    const Vec w = grs_dual_weights(F, helperPoints);

    css.u = uu;
    css.uPrime.resize(D);
    css.Lam1.resize(D);
    css.Lam2.resize(D);
    for (std::size_t j = 0; j < D; ++j) {
        const Fe denom = F.sub(F.pow(helperPoints[j], alpha0), css.lamF);
        if (denom.is_zero())
            throw Error(Errc::InvalidHelperSet, "helper point " + std::to_string(helperPoints[j].value)
                                                    + " shares lambda with the failed node");
        const Fe dinv = F.inv(denom);
        css.uPrime[j] = F.div(w[j], uu[j]);
        css.Lam1[j] = F.mul(uu[j], dinv);
        css.Lam2[j] = F.mul(css.uPrime[j], dinv);
    }

    css.Vtilde = vandermonde(F, helperPoints, D);
    const Mat J = hstack(identity(F, alpha0), mat_scale(F, css.lamF, identity(F, alpha0)));
    css.HX = mat_mul(F, J, mat_inv(F, mat_mul(F, diag(css.Lam2), css.Vtilde)));
    css.HZ = mat_mul(F, J, mat_inv(F, mat_mul(F, diag(css.Lam1), css.Vtilde)));

    if (!check_dual_containment(F, css.HX, css.HZ))
        throw InternalError(Errc::DualContainmentViolated, "H_X H_Z^T != 0");
    return css;
}

/// Helpers are sorted; `u` (default all-ones) is indexed in that order.
inline RepairCSS build_repair_css(const SystemParams& sp, NodeId f, std::vector<NodeId> helpers,
                                  std::optional<Vec> u = std::nullopt)
{
    if (f < 1 || f > sp.n)
        throw Error(Errc::InvalidHelperSet, "failed node " + std::to_string(f) + " out of range");
    if (helpers.size() != sp.instance_helpers())
        throw Error(Errc::InvalidHelperSet, "need " + std::to_string(sp.instance_helpers()) + " helpers, got "
                                                + std::to_string(helpers.size()));
    std::sort(helpers.begin(), helpers.end());
    if (std::adjacent_find(helpers.begin(), helpers.end()) != helpers.end())
        throw Error(Errc::InvalidHelperSet, "duplicate helper");
    for (NodeId h : helpers) {
        if (h < 1 || h > sp.n)
            throw Error(Errc::InvalidHelperSet, "helper " + std::to_string(h) + " out of range");
        if (h == f)
            throw Error(Errc::InvalidHelperSet, "failed node cannot help itself");
    }
    Vec pts;
    for (NodeId h : helpers)
        pts.push_back(sp.point(h));
    RepairCSS css = build_css_from_points(sp.field, sp.alpha0, sp.point(f), pts, std::move(u));
    css.failedNode = f;
    css.helpers = std::move(helpers);
    return css;
}

} // namespace earc
