#pragma once

// JSON forms of the library's values. Key order is fixed (ordered_json).

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "css.hpp"
#include "pmcode.hpp"
#include "repair.hpp"
#include "stabilizer.hpp"

namespace earc {

using ojson = nlohmann::ordered_json;

inline ojson to_json(std::span<const Fe> v)
{
    ojson a = ojson::array();
    for (Fe x : v)
        a.push_back(x.value);
    return a;
}

inline ojson to_json(const Mat& m)
{
    ojson a = ojson::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        a.push_back(to_json(m.row(r)));
    return a;
}

inline ojson ids_to_json(std::span<const NodeId> ids)
{
    ojson a = ojson::array();
    for (NodeId i : ids)
        a.push_back(i);
    return a;
}

inline ojson to_json(const NodeStorage& s)
{
    return ojson{{"nodeId", s.nodeId}, {"rowM", to_json(s.rowM)}, {"rowMp", to_json(s.rowMp)}};
}

/// Full RepairCSS in declaration order.
inline ojson to_json(const RepairCSS& c)
{
    return ojson{{"failedNode", c.failedNode}, {"helpers", ids_to_json(c.helpers)},
                 {"HX", to_json(c.HX)},        {"HZ", to_json(c.HZ)},
                 {"Lam1", to_json(c.Lam1)},    {"Lam2", to_json(c.Lam2)},
                 {"u", to_json(c.u)},          {"uPrime", to_json(c.uPrime)},
                 {"lamF", c.lamF.value}};
}

inline ojson to_json(const HelperPayload& p)
{
    return ojson{{"helperId", p.helperId}, {"yX", p.yX.value}, {"yZ", p.yZ.value}, {"quditsSent", p.quditsSent}};
}

inline ojson to_json(const Syndrome& s) { return ojson{{"sX", to_json(s.sX)}, {"sZ", to_json(s.sZ)}}; }

inline ojson to_json(const RepairTranscript& t)
{
    ojson payloads = ojson::array();
    for (const auto& p : t.payloads)
        payloads.push_back(to_json(p));
    return ojson{
        {"failedNode", t.failedNode},
        {"helpers", ids_to_json(t.helpers)},
        {"mode", std::string(to_string(t.mode))},
        {"css",
         {{"HX", to_json(t.css.HX)},
          {"HZ", to_json(t.css.HZ)},
          {"Lam1", to_json(t.css.Lam1)},
          {"Lam2", to_json(t.css.Lam2)},
          {"u", to_json(t.css.u)},
          {"uPrime", to_json(t.css.uPrime)}}},
        {"payloads", payloads},
        {"syndrome", to_json(t.syndrome)},
        {"regenerated", {{"rowM", to_json(t.regenerated.rowM)}, {"rowMp", to_json(t.regenerated.rowMp)}}},
        {"quditTotal", t.quditTotal},
    };
}

inline ojson to_json(const ExtendedTranscript& t)
{
    ojson subs = ojson::array();
    for (const auto& s : t.subfiles)
        subs.push_back(to_json(s));
    ojson per = ojson::object();
    for (const auto& [id, q] : t.quditsPerHelper)
        per[std::to_string(id)] = q;
    return ojson{{"failedNode", t.failedNode}, {"helpers", ids_to_json(t.helpers)},
                 {"mode", std::string(to_string(t.mode))}, {"subfiles", subs},
                 {"quditTotal", t.quditTotal}, {"quditsPerHelper", per}};
}

inline ojson params_to_json(const SystemParams& sp)
{
    return ojson{{"n", sp.n},         {"k", sp.k},
                 {"d", sp.d},         {"p", sp.field.prime()},
                 {"evalPoints", to_json(sp.evalPoints)},
                 {"alpha", sp.alpha()}, {"B", sp.B()}};
}

inline ojson storage_to_json(const SystemParams& sp, const FileStorage& storage)
{
    ojson subs = ojson::array();
    for (const auto& sub : storage) {
        ojson nodes = ojson::array();
        for (const auto& s : sub)
            nodes.push_back(to_json(s));
        subs.push_back(nodes);
    }
    return ojson{{"params", params_to_json(sp)}, {"subfiles", subs}};
}

inline Vec vec_from_json(const ojson& j, const Field& F)
{
    if (!j.is_array())
        throw Error(Errc::ParseError, "expected a JSON array of integers");
    Vec out;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw Error(Errc::ParseError, "expected integer entries");
        out.push_back(F.from_int(x.get<std::int64_t>()));
    }
    return out;
}

/// Inverse of `storage_to_json`; params are rebuilt and revalidated.
inline std::pair<SystemParams, FileStorage> storage_from_json(const ojson& j)
{
    try {
        const auto& pj = j.at("params");
        const std::uint64_t p = pj.at("p").get<std::uint64_t>();
        const Field F(p);
        SystemParams sp = make_params(pj.at("n").get<std::size_t>(), pj.at("k").get<std::size_t>(),
                                      pj.at("d").get<std::size_t>(), p, vec_from_json(pj.at("evalPoints"), F));
        FileStorage storage;
        for (const auto& sub : j.at("subfiles")) {
            std::vector<NodeStorage> nodes;
            for (const auto& nj : sub)
                nodes.push_back({nj.at("nodeId").get<NodeId>(), vec_from_json(nj.at("rowM"), F),
                                 vec_from_json(nj.at("rowMp"), F)});
            storage.push_back(std::move(nodes));
        }
        return {std::move(sp), std::move(storage)};
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

} // namespace earc
