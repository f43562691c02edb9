// earc_cli: encode / retrieve / repair / sweep / tradeoff / demo driver.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <earc/earc.hpp>
#include <earc/json_io.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace earc;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct RunConfig {
    std::string command;
    std::size_t n = 6, k = 3, d = 4;
    std::uint64_t p = 13;
    std::uint64_t seed = 42;
    std::string mode = "linear";
    NodeId failed = 1;
    std::vector<NodeId> helpers;
    std::vector<NodeId> nodes;
    std::string inPath;
    std::string outPath;
    std::string format;
    std::size_t messages = 20;
    std::int64_t B = 12;
    std::vector<std::string> betas;
    std::string goldenPath;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Output goes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw UsageError("cannot open " + path + " for writing");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    [[nodiscard]] bool to_stdout() const { return !file_.is_open(); }

private:
    std::ofstream file_;
};

ojson read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    try {
        return ojson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

SystemParams params_from(const RunConfig& c) { return make_params(c.n, c.k, c.d, c.p); }

void require_json(const RunConfig& c)
{
    if (!c.format.empty() && c.format != "json")
        throw UsageError(c.command + " only writes json");
}

// Message from --in (JSON array of B integers) or drawn from the seed.
Vec load_or_draw_message(const RunConfig& c, const SystemParams& sp, SplitMix64& rng)
{
    if (c.inPath.empty())
        return rng.elements(sp.field, sp.B());
    const ojson j = read_json(c.inPath);
    Vec u = vec_from_json(j, sp.field);
    if (u.size() != sp.B())
        throw UsageError("message must hold B = " + std::to_string(sp.B()) + " integers");
    return u;
}

// ---------------------------------------------------------------- demo

struct GoldenCheck {
    std::string name;
    ojson expected;
    ojson actual;
    [[nodiscard]] bool ok() const { return expected == actual; }
};

ojson builtin_golden()
{
    return ojson{
        {"V", {{1, 1, 1, 1}, {1, 2, 4, 8}, {1, 3, 9, 1}, {1, 4, 3, 12}, {1, 5, 12, 8}, {1, 6, 10, 8}}},
        {"lambda", {1, 4, 9, 3, 12, 10}},
        {"Vtilde", {{1, 2, 4, 8}, {1, 4, 3, 12}, {1, 5, 12, 8}, {1, 6, 10, 8}}},
        {"Lam1", {9, 7, 6, 3}},
        {"Lam2", {11, 5, 11, 2}},
        {"HX", {{11, 10, 3, 9}, {4, 2, 1, 0}}},
        {"HZ", {{12, 9, 12, 6}, {2, 7, 4, 0}}},
        {"regenerated", true},
    };
}

int cmd_demo(const RunConfig& c)
{
    const ojson golden = c.goldenPath.empty() ? builtin_golden() : read_json(c.goldenPath);
    const SystemParams sp = make_params(6, 3, 4, 13);
    const RepairCSS css = build_repair_css(sp, 1, {2, 4, 5, 6});

    SplitMix64 rng(c.seed);
    const Vec u = rng.elements(sp.field, sp.B());
    const auto nodes = encode(sp, pack_message(sp, u));
    bool regenerated = false;
    try {
        regenerated = run_repair(sp, nodes, 1, {2, 4, 5, 6}, std::nullopt, parse_mode(c.mode)).regenerated == nodes[0];
    } catch (const InternalError&) {
        regenerated = false;
    }

    const std::vector<std::pair<std::string, ojson>> actual = {
        {"V", to_json(sp.V())},         {"lambda", to_json(sp.lambda)}, {"Vtilde", to_json(css.Vtilde)},
        {"Lam1", to_json(css.Lam1)},    {"Lam2", to_json(css.Lam2)},    {"HX", to_json(css.HX)},
        {"HZ", to_json(css.HZ)},        {"regenerated", regenerated},
    };
    std::vector<GoldenCheck> checks;
    for (const auto& [name, value] : actual)
        checks.push_back({name, golden.contains(name) ? golden.at(name) : ojson(), value});
    const auto passed = static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](auto& g) { return g.ok(); }));

    Sink sink(c.outPath);
    if (c.format == "json") {
        ojson rep = ojson::array();
        for (const auto& g : checks)
            rep.push_back({{"name", g.name}, {"pass", g.ok()}, {"expected", g.expected}, {"actual", g.actual}});
        sink.os() << ojson{{"checks", rep}, {"passed", passed}, {"total", checks.size()}}.dump(2) << '\n';
    } else if (c.format.empty() || c.format == "text") {
        for (const auto& g : checks) {
            sink.os() << (g.ok() ? "PASS " : "FAIL ") << g.name;
            if (!g.ok())
                sink.os() << " expected " << g.expected.dump() << " got " << g.actual.dump();
            sink.os() << '\n';
        }
        sink.os() << passed << '/' << checks.size() << " golden values match\n";
    } else {
        throw UsageError("demo-example1 writes text or json");
    }
    return passed == checks.size() ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- encode / retrieve

int cmd_encode(const RunConfig& c)
{
    require_json(c);
    const SystemParams sp = params_from(c);
    SplitMix64 rng(c.seed);
    const Vec u = load_or_draw_message(c, sp, rng);
    Sink sink(c.outPath);
    sink.os() << storage_to_json(sp, encode_file(sp, u)).dump() << '\n';
    return kOk;
}

int cmd_retrieve(const RunConfig& c)
{
    require_json(c);
    std::optional<Vec> original;
    SystemParams sp = params_from(c);
    FileStorage storage;
    if (!c.inPath.empty() && read_json(c.inPath).is_object()) {
        std::tie(sp, storage) = storage_from_json(read_json(c.inPath));
    } else {
        SplitMix64 rng(c.seed);
        original = load_or_draw_message(c, sp, rng);
        storage = encode_file(sp, *original);
    }
    std::vector<NodeId> nodes = c.nodes;
    if (nodes.empty())
        for (NodeId i = 1; i <= sp.k; ++i)
            nodes.push_back(i);
    const Vec u = retrieve_file(sp, storage, nodes);
    const bool ok = !original || *original == u;
    Sink sink(c.outPath);
    sink.os() << ojson{{"nodes", ids_to_json(nodes)}, {"message", to_json(u)}, {"verified", ok}}.dump() << '\n';
    return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- repair

int cmd_repair(const RunConfig& c)
{
    require_json(c);
    SystemParams sp = params_from(c);
    FileStorage storage;
    if (!c.inPath.empty() && read_json(c.inPath).is_object()) {
        std::tie(sp, storage) = storage_from_json(read_json(c.inPath));
    } else {
        SplitMix64 rng(c.seed);
        storage = encode_file(sp, load_or_draw_message(c, sp, rng));
    }
    std::vector<NodeId> helpers = c.helpers;
    if (helpers.empty())
        for (NodeId i = 1; i <= sp.n && helpers.size() < sp.d; ++i)
            if (i != c.failed)
                helpers.push_back(i);

    const SyndromeMode mode = parse_mode(c.mode);
    const ExtendedTranscript tr = run_repair_extended(sp, storage, c.failed, helpers, mode);
    const BandwidthReport bw = bandwidth_report(sp, tr);
    ojson out = sp.subfiles == 1 ? to_json(tr.subfiles.front()) : to_json(tr);
    out["bandwidth"] = {{"alpha", to_string(bw.alpha)},
                        {"dBetaQ", to_string(bw.dBetaQ)},
                        {"BOverK", to_string(bw.BOverK)},
                        {"classicalMSRBandwidth", to_string(bw.classicalMSRBandwidth)}};
    Sink sink(c.outPath);
    sink.os() << out.dump() << '\n';
    return kOk;
}

// ---------------------------------------------------------------- sweep

std::vector<std::vector<NodeId>> choose(const std::vector<NodeId>& from, std::size_t r)
{
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == r) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < from.size(); ++i) {
            cur.push_back(from[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

int cmd_sweep(const RunConfig& c)
{
    const SystemParams sp = params_from(c);
    const SyndromeMode mode = parse_mode(c.mode);
    if (!mode_available(sp, mode))
        throw UsageError("mode " + c.mode + " unavailable for these parameters");
    SplitMix64 rng(c.seed);

    std::vector<NodeId> all;
    for (NodeId i = 1; i <= sp.n; ++i)
        all.push_back(i);
    const auto retrievalSets = choose(all, sp.k);

    std::size_t repairCases = 0, repairTrials = 0, retrievalTrials = 0, failures = 0;
    std::size_t qMin = ~std::size_t{0}, qMax = 0, perHelperMin = ~std::size_t{0}, perHelperMax = 0;
    for (NodeId f = 1; f <= sp.n; ++f) {
        std::vector<NodeId> others;
        for (NodeId i : all)
            if (i != f)
                others.push_back(i);
        for (const auto& helpers : choose(others, sp.d)) {
            ++repairCases;
            for (std::size_t t = 0; t < c.messages; ++t) {
                const FileStorage st = encode_file(sp, rng.elements(sp.field, sp.B()));
                ++repairTrials;
                try {
                    const auto tr = run_repair_extended(sp, st, f, helpers, mode);
                    bool ok = tr.quditTotal * sp.k == sp.B();
                    for (std::size_t s = 0; s < st.size(); ++s)
                        ok = ok && tr.regenerated[s] == st[s][f - 1];
                    failures += ok ? 0 : 1;
                    qMin = std::min(qMin, tr.quditTotal);
                    qMax = std::max(qMax, tr.quditTotal);
                    for (const auto& [h, q] : tr.quditsPerHelper) {
                        perHelperMin = std::min(perHelperMin, q);
                        perHelperMax = std::max(perHelperMax, q);
                    }
                } catch (const InternalError&) {
                    ++failures;
                }
            }
        }
    }
    for (std::size_t t = 0; t < c.messages; ++t) {
        const Vec u = rng.elements(sp.field, sp.B());
        const FileStorage st = encode_file(sp, u);
        for (const auto& s : retrievalSets) {
            ++retrievalTrials;
            if (retrieve_file(sp, st, s) != u)
                ++failures;
        }
    }

    const ojson summary{
        {"params", params_to_json(sp)},
        {"mode", c.mode},
        {"seed", c.seed},
        {"messages", c.messages},
        {"repairCases", repairCases},
        {"retrievalSubsets", retrievalSets.size()},
        {"trials", repairTrials + retrievalTrials},
        {"failures", failures},
        {"quditTotal", {{"min", qMin}, {"max", qMax}, {"BOverK", sp.B() / sp.k}}},
        {"perHelperQudits", {{"min", perHelperMin}, {"max", perHelperMax}, {"planned", plan_subfiles(sp).perHelperQudits}}},
    };
    Sink sink(c.outPath);
    if (c.format == "csv") {
        sink.os() << "n,k,d,p,repair_cases,retrieval_subsets,trials,failures,qudit_total_min,qudit_total_max\n"
                  << sp.n << ',' << sp.k << ',' << sp.d << ',' << sp.field.prime() << ',' << repairCases << ','
                  << retrievalSets.size() << ',' << repairTrials + retrievalTrials << ',' << failures << ',' << qMin
                  << ',' << qMax << '\n';
    } else if (c.format.empty() || c.format == "json") {
        sink.os() << summary.dump() << '\n';
    } else {
        throw UsageError("sweep writes json or csv");
    }
    return failures == 0 ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- tradeoff

int cmd_tradeoff(const RunConfig& c)
{
    const auto k = static_cast<std::int64_t>(c.k), d = static_cast<std::int64_t>(c.d);
    if (k < 1 || d < k)
        throw UsageError("tradeoff needs 1 <= k <= d");
    std::vector<Rational> grid;
    for (const auto& b : c.betas) {
        const Rational r = parse_rational(b);
        if (r <= 0)
            throw UsageError("grid values must be positive");
        grid.push_back(r);
    }
    const auto rows = tradeoff_table(k, d, c.B, grid);
    Sink sink(c.outPath);
    if (c.format.empty() || c.format == "csv") {
        write_tradeoff_csv(sink.os(), rows);
    } else if (c.format == "json") {
        ojson a = ojson::array();
        for (const auto& r : rows)
            a.push_back({{"beta", to_string(r.beta)},
                         {"alpha_min_classical", r.alphaMinClassical ? ojson(*r.alphaMinClassical) : ojson()},
                         {"alpha_min_quantum", r.alphaMinQuantum ? ojson(*r.alphaMinQuantum) : ojson()}});
        sink.os() << a.dump() << '\n';
    } else {
        throw UsageError("tradeoff writes csv or json");
    }

    // Summary lines go to stderr when the table occupies stdout.
    std::ostream& note = sink.to_stdout() ? std::cerr : std::cout;
    try {
        const TradeoffPoint pt = optimal_point(k, d, c.B);
        note << "alpha=" << to_string(pt.alpha) << " d_beta_q=" << to_string(pt.repair_bandwidth()) << '\n';
        note << "classical_msr_bandwidth=" << to_string(msr_repair_bandwidth(k, d, c.B))
             << " quantum_bandwidth=" << to_string(pt.repair_bandwidth())
             << " msr_reduction_factor=" << to_string(msr_reduction_factor(k, d)) << '\n';
    } catch (const Error& e) {
        note << "warning," << to_string(e.code()) << ",no optimal point: " << e.what() << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const RunConfig& base)
{
    int rc = kOk;
    auto run = [&](const char* name, auto&& fn) {
        std::ostringstream sink;
        auto* old = std::cout.rdbuf(sink.rdbuf());
        int r = kVerifyFailed;
        try {
            r = fn();
        } catch (const std::exception& e) {
            std::cout.rdbuf(old);
            std::cout << "FAIL " << name << ": " << e.what() << '\n';
            rc = kVerifyFailed;
            return;
        }
        std::cout.rdbuf(old);
        std::cout << (r == kOk ? "PASS " : "FAIL ") << name << '\n';
        if (r != kOk)
            rc = kVerifyFailed;
    };
    RunConfig c = base;
    c.outPath.clear();
    c.format.clear();
    run("demo-example1", [&] { return cmd_demo(c); });
    RunConfig s = c;
    s.messages = 3;
    run("sweep (6,3,4,13)", [&] { return cmd_sweep(s); });
    RunConfig e = s;
    e.n = 6, e.k = 2, e.d = 3, e.p = 13;
    run("sweep (6,2,3,13)", [&] { return cmd_sweep(e); });
    RunConfig sv = s;
    sv.mode = "statevector";
    sv.messages = 1;
    run("sweep statevector (6,3,4,13)", [&] { return cmd_sweep(sv); });
    std::cout << (rc == kOk ? "selftest: ok" : "selftest: FAILED") << '\n';
    return rc;
}

void add_shared(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--n", c.n, "node count")->capture_default_str();
    sub->add_option("--k", c.k, "retrieval threshold")->capture_default_str();
    sub->add_option("--d", c.d, "helpers per repair")->capture_default_str();
    sub->add_option("--prime", c.p, "field prime")->capture_default_str();
    sub->add_option("--seed", c.seed, "SplitMix64 seed")->capture_default_str();
    sub->add_option("--mode", c.mode, "syndrome backend")
        ->check(CLI::IsMember({"linear", "symplectic", "statevector"}))
        ->capture_default_str();
    sub->add_option("--out", c.outPath, "output file (default stdout)");
    sub->add_option("--format", c.format, "json|csv (text for demo-example1)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entanglement-assisted exact-repair regenerating code simulator"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* demo = app.add_subcommand("demo-example1", "replay the (6,3,4) worked example over GF(13)");
    auto* enc = app.add_subcommand("encode", "encode a file into node storage");
    auto* ret = app.add_subcommand("retrieve", "rebuild the file from k nodes");
    auto* rep = app.add_subcommand("repair", "regenerate one failed node");
    auto* swp = app.add_subcommand("sweep", "exhaustive repair and retrieval check");
    auto* tro = app.add_subcommand("tradeoff", "tabulate the storage/bandwidth bounds");
    auto* slf = app.add_subcommand("selftest", "quick built-in verification");
    for (auto* s : {demo, enc, ret, rep, swp, tro, slf})
        add_shared(s, cfg);

    demo->add_option("--golden", cfg.goldenPath, "JSON golden table overriding the built-in one");
    for (auto* s : {enc, ret, rep})
        s->add_option("--in", cfg.inPath, "message (JSON array of B integers) or encode output");
    ret->add_option("--nodes", cfg.nodes, "node ids to read")->delimiter(',');
    rep->add_option("--failed", cfg.failed, "failed node id")->capture_default_str();
    rep->add_option("--helpers", cfg.helpers, "helper ids a,b,c,...")->delimiter(',');
    swp->add_option("--messages", cfg.messages, "random messages per case")->capture_default_str();
    tro->add_option("--B", cfg.B, "file size")->capture_default_str();
    tro->add_option("--betas", cfg.betas, "grid of beta values, e.g. 1/2,1,2")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*demo)
            return cmd_demo(cfg);
        if (*enc)
            return cmd_encode(cfg);
        if (*ret)
            return cmd_retrieve(cfg);
        if (*rep)
            return cmd_repair(cfg);
        if (*swp)
            return cmd_sweep(cfg);
        if (*tro)
            return cmd_tradeoff(cfg);
        if (*slf)
            return cmd_selftest(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalError& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return kVerifyFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
