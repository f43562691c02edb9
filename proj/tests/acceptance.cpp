// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails or overruns its time budget.

#include <earc/earc.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace earc;
using earc::test::ints;
using earc::test::subsets;
using earc::test::without;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what)
{
    if (!cond)
        throw Failure(what);
}

Vec read_back(const SystemParams& sp, const std::vector<NodeStorage>& nodes, const std::vector<NodeId>& ids)
{
    std::vector<NodeStorage> shares;
    for (NodeId i : ids)
        shares.push_back(nodes[i - 1]);
    return unpack_message(retrieve(sp, shares));
}

struct Criterion {
    int id;
    std::string title;
    double budgetSeconds;
    std::function<std::string()> body;  // returns a one-line summary
};

std::vector<NodeId> random_helpers(std::size_t n, NodeId f, std::size_t count, SplitMix64& rng)
{
    std::vector<NodeId> pool = without(n, f);
    for (std::size_t i = 0; i < count; ++i)
        std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(count);
    return pool;
}

std::string golden_replay()
{
    const SystemParams sp = make_params(6, 3, 4, 13);
    const Field& F = sp.field;
    require(sp.V() == Mat(F, {{1, 1, 1, 1}, {1, 2, 4, 8}, {1, 3, 9, 1}, {1, 4, 3, 12}, {1, 5, 12, 8}, {1, 6, 10, 8}}), "V");
    require(sp.lambda == ints(F, {1, 4, 9, 3, 12, 10}), "lambda");
    const RepairCSS c = build_repair_css(sp, 1, {2, 4, 5, 6});
    require(c.Vtilde == Mat(F, {{1, 2, 4, 8}, {1, 4, 3, 12}, {1, 5, 12, 8}, {1, 6, 10, 8}}), "Vtilde");
    require(c.Lam1 == ints(F, {9, 7, 6, 3}), "lambda-tilde");
    require(c.Lam2 == ints(F, {11, 5, 11, 2}), "lambda-tilde-prime");
    require(c.HX == Mat(F, {{11, 10, 3, 9}, {4, 2, 1, 0}}), "H_X");
    require(c.HZ == Mat(F, {{12, 9, 12, 6}, {2, 7, 4, 0}}), "H_Z");
    SplitMix64 rng(1);
    const auto nodes = encode(sp, pack_message(sp, rng.elements(F, sp.B())));
    require(run_repair(sp, nodes, 1, {2, 4, 5, 6}).regenerated == nodes[0], "regeneration");
    return "8/8 golden values match";
}

std::string dual_containment()
{
    SplitMix64 rng(2);
    std::size_t checked = 0;

    const SystemParams a = make_params(6, 3, 4, 13);
    for (NodeId f = 1; f <= a.n; ++f)
        for (const auto& h : subsets(a.n - 1, a.d)) {
            std::vector<NodeId> helpers;
            for (NodeId x : h)
                helpers.push_back(x >= f ? x + 1 : x);
            for (int t = 0; t < 20; ++t) {
                const RepairCSS c = build_repair_css(a, f, helpers, test::random_nonzero(a.field, a.d, rng));
                require(check_dual_containment(a.field, c.HX, c.HZ), "violation at (6,3,4,13)");
                ++checked;
            }
        }

    // (8,3,4,13) with points 1..8 has lambda collisions; sample until 200 constructible cases.
    const Field F13(13);
    std::size_t accepted = 0, rejected = 0;
    while (accepted < 200) {
        const NodeId f = 1 + rng.below(8);
        const auto helpers = random_helpers(8, f, 4, rng);
        Vec pts;
        for (NodeId h : helpers)
            pts.push_back(F13.from_int(static_cast<std::int64_t>(h)));
        try {
            const RepairCSS c = build_css_from_points(F13, 2, F13.from_int(static_cast<std::int64_t>(f)), pts,
                                                      test::random_nonzero(F13, 4, rng));
            require(check_dual_containment(F13, c.HX, c.HZ), "violation at (8,3,4,13)");
            ++accepted;
        } catch (const Error& e) {
            if (e.code() != Errc::InvalidHelperSet)
                throw;
            ++rejected;
        }
    }
    checked += accepted;

    const SystemParams b = make_params(7, 4, 6, 17);
    for (int t = 0; t < 200; ++t) {
        const NodeId f = 1 + rng.below(b.n);
        const RepairCSS c = build_repair_css(b, f, random_helpers(b.n, f, b.d, rng), test::random_nonzero(b.field, b.d, rng));
        require(check_dual_containment(b.field, c.HX, c.HZ), "violation at (7,4,6,17)");
        ++checked;
    }
    std::ostringstream os;
    os << checked << " constructions, 0 violations ((8,3,4,13): " << rejected << " lambda-collision draws rejected)";
    return os.str();
}

// Shared by criteria 3 and 8: every repair case, optionally followed by post-repair retrieval.
std::string exact_repair(bool retrieveAfter)
{
    SplitMix64 rng(retrieveAfter ? 8 : 3);
    std::size_t repairs = 0, retrievals = 0;
    auto one = [&](const SystemParams& sp, NodeId f, const std::vector<NodeId>& helpers) {
        const Vec u = rng.elements(sp.field, sp.B());
        auto nodes = encode(sp, pack_message(sp, u));
        const RepairTranscript tr = run_repair(sp, nodes, f, helpers);
        require(tr.regenerated == nodes[f - 1], "regenerated content differs");
        require(tr.quditTotal * sp.k == sp.B(), "quditTotal != B/k");
        ++repairs;
        if (!retrieveAfter)
            return;
        nodes[f - 1] = tr.regenerated;
        for (const auto& s : subsets(sp.n, sp.k)) {
            if (std::find(s.begin(), s.end(), f) == s.end())
                continue;
            require(read_back(sp, nodes, s) == u, "retrieval after repair failed");
            ++retrievals;
        }
    };

    const SystemParams a = make_params(6, 3, 4, 13);
    for (NodeId f = 1; f <= a.n; ++f)
        for (const auto& h : subsets(a.n - 1, a.d)) {
            std::vector<NodeId> helpers;
            for (NodeId x : h)
                helpers.push_back(x >= f ? x + 1 : x);
            for (int t = 0; t < 20; ++t)
                one(a, f, helpers);
        }
    const SystemParams b = make_params(7, 4, 6, 17);
    for (int t = 0; t < 100; ++t) {
        const NodeId f = 1 + rng.below(b.n);
        one(b, f, random_helpers(b.n, f, b.d, rng));
    }
    std::ostringstream os;
    os << repairs << " repairs exact, quditTotal = B/k";
    if (retrieveAfter)
        os << ", " << retrievals << " retrievals through the regenerated node";
    return os.str();
}

std::string retrieval()
{
    const SystemParams sp = make_params(6, 3, 4, 13);
    SplitMix64 rng(4);
    const auto sets = subsets(sp.n, sp.k);
    for (int t = 0; t < 50; ++t) {
        const Vec u = rng.elements(sp.field, sp.B());
        const auto nodes = encode(sp, pack_message(sp, u));
        for (const auto& s : sets)
            require(read_back(sp, nodes, s) == u, "retrieval mismatch");
    }
    return std::to_string(sets.size()) + " subsets x 50 messages recovered";
}

std::string backends()
{
    SplitMix64 rng(5);
    for (std::uint64_t p : {3u, 5u, 13u}) {
        const Field F(p);
        for (int t = 0; t < 1000; ++t) {
            const std::size_t N = 2 + rng.below(7);
            const std::size_t rX = rng.below(N + 1);
            const std::size_t rZ = rng.below(N - rX + 1);
            const StabGroup g = random_css_group(F, N, rX, rZ, rng);
            const PauliError e = random_pauli(F, N, rng);
            const Syndrome lin = syndrome_linear(g, e);
            const Syndrome sym = syndrome_symplectic(g, e);
            require(lin.sX == sym.sX && lin.sZ == sym.sZ, "linear/symplectic mismatch at p=" + std::to_string(p));
        }
    }
    double worst = 0.0;
    auto statevector = [&](const StabGroup& g, int errors) {
        for (int t = 0; t < errors; ++t) {
            const PauliError e = random_pauli(g.field(), g.qudits(), rng);
            const StatevectorSyndrome sv = syndrome_statevector(g, e);
            const Syndrome lin = syndrome_linear(g, e);
            require(sv.syndrome.sX == lin.sX && sv.syndrome.sZ == lin.sZ, "state-vector mismatch");
            require(sv.maxResidual < statevector_tolerance, "eigenvalue residual too large");
            worst = std::max(worst, sv.maxResidual);
        }
    };
    const Field F5(5);
    for (int t = 0; t < 10; ++t)
        statevector(random_css_group(F5, 4, 2, 2, rng), 10);
    const SystemParams sp = make_params(6, 3, 4, 13);
    const RepairCSS c = build_repair_css(sp, 1, {2, 4, 5, 6});
    statevector(StabGroup(sp.field, c.HX, c.HZ), 100);
    std::ostringstream os;
    os << "3000 linear/symplectic pairs identical; 200 state-vector errors match, max residual " << worst;
    return os.str();
}

std::string extension()
{
    const SystemParams sp = make_params(6, 2, 3, 13);
    const SubfilePlan plan = plan_subfiles(sp);
    require(plan.perHelperQudits == binomial(sp.d - 1, 2 * sp.k - 3), "per-helper plan");
    SplitMix64 rng(6);
    std::size_t repairs = 0;
    for (NodeId f = 1; f <= sp.n; ++f)
        for (const auto& h : subsets(sp.n - 1, sp.d)) {
            std::vector<NodeId> helpers;
            for (NodeId x : h)
                helpers.push_back(x >= f ? x + 1 : x);
            for (int t = 0; t < 20; ++t) {
                const FileStorage st = encode_file(sp, rng.elements(sp.field, sp.B()));
                const ExtendedTranscript tr = run_repair_extended(sp, st, f, helpers);
                for (std::size_t s = 0; s < st.size(); ++s)
                    require(tr.regenerated[s] == st[s][f - 1], "sub-file not regenerated");
                require(tr.quditTotal == 6 && tr.quditTotal * sp.k == sp.B(), "total qudits != B/k = 6");
                require(tr.quditsPerHelper.size() == sp.d, "helper missing from transcript");
                for (const auto& [id, q] : tr.quditsPerHelper)
                    require(q == 2, "per-helper qudits != 2");
                ++repairs;
            }
        }
    // C(d, 2k-2) = 3 counts sub-files, not what one helper sends.
    require(binomial(sp.d, 2 * sp.k - 2) == 3 && plan.perHelperQudits == 2, "sub-file count vs per-helper count");
    return std::to_string(repairs) + " repairs; total 6 qudits, 2 per helper (C(d,2k-2) = 3 sub-files)";
}

std::string tradeoff()
{
    for (auto [k, d] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 4}, {4, 6}, {10, 20}})
        for (std::int64_t t = 1; t <= 3; ++t) {
            const std::int64_t B = k * d * t;
            const TradeoffPoint pt = optimal_point(k, d, B);
            require(pt.alpha == Rational(B, k) && pt.repair_bandwidth() == Rational(B, k), "optimal point");
            require(quantum_bound_sum(k, d, pt.alpha, pt.beta) == Rational(B), "bound not tight");
            require(quantum_feasible(k, d, pt.alpha, pt.beta, B), "optimal point infeasible");
        }
    const TradeoffPoint q = optimal_point(10, 20, 2200);
    const Rational classical = msr_repair_bandwidth(10, 20, 2200);
    require(classical == Rational(400) && q.repair_bandwidth() == Rational(220), "(10,20,2200) bandwidths");
    require(classical / q.repair_bandwidth() == Rational(20, 11), "MSR/quantum ratio");
    const Rational factor = msr_reduction_factor(10, 20);
    require(factor == Rational(11, 2) && factor > 5, "reduction factor");
    return "12 points tight; MSR/quantum = 20/11; reduction factor " + to_string(factor);
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "golden replay of the (6,3,4) example", 1.0, golden_replay},
        {2, "dual containment H_X H_Z^T = 0", 5.0, dual_containment},
        {3, "exact repair", 10.0, [] { return exact_repair(false); }},
        {4, "data retrieval", 5.0, retrieval},
        {5, "syndrome backend equivalence", 60.0, backends},
        {6, "extension d > 2k-2", 5.0, extension},
        {7, "tradeoff optimal point", 1.0, tradeoff},
        {8, "retrieval after repair", 10.0, [] { return exact_repair(true); }},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = c.body();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs > c.budgetSeconds) {
            ok = false;
            detail += " (over budget)";
        }
        std::printf("%s criterion %d: %s [%.3fs / %.0fs] %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                    c.budgetSeconds, detail.c_str());
        failed += ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
