#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace earc;
using earc::test::ints;

namespace {

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::ParseError;
}

// Two-term evaluation vbar_i^T S1 + lambda_i vbar_i^T S2, written out with loops.
Vec two_term_row(const SystemParams& sp, NodeId i, const Mat& S1, const Mat& S2)
{
    const Field& F = sp.field;
    const Vec vb = sp.vbar(i);
    Vec out(sp.alpha0);
    for (std::size_t c = 0; c < sp.alpha0; ++c) {
        Fe a = F.zero(), b = F.zero();
        for (std::size_t r = 0; r < sp.alpha0; ++r) {
            a = F.add(a, F.mul(vb[r], S1(r, c)));
            b = F.add(b, F.mul(vb[r], S2(r, c)));
        }
        out[c] = F.add(a, F.mul(sp.lam(i), b));
    }
    return out;
}

Vec random_message(const SystemParams& sp, SplitMix64& rng) { return rng.elements(sp.field, sp.subfile_symbols()); }

} // namespace

TEST(MakeParams, WorkedExample)
{
    const SystemParams sp = test::example1();
    EXPECT_EQ(sp.evalPoints, ints(sp.field, {1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(sp.lambda, ints(sp.field, {1, 4, 9, 3, 12, 10}));
    EXPECT_EQ(sp.alpha0, 2u);
    EXPECT_EQ(sp.B(), 12u);
    EXPECT_EQ(sp.alpha(), 4u);
    EXPECT_EQ(sp.subfiles, 1u);
    EXPECT_EQ(sp.B(), sp.k * sp.alpha());
}

TEST(MakeParams, AlphaZeroOneMakesLambdaThePoints)
{
    const SystemParams sp = make_params(4, 2, 2, 7);
    EXPECT_EQ(sp.alpha0, 1u);
    EXPECT_EQ(sp.lambda, sp.evalPoints);
    EXPECT_EQ(code_of([] { (void)make_params(4, 2, 2, 7, ints(Field(7), {1, 2, 2, 3})); }), Errc::InvalidParams);
}

TEST(MakeParams, RegimeViolations)
{
    EXPECT_EQ(code_of([] { (void)make_params(6, 1, 4, 13); }), Errc::InvalidParams);
    EXPECT_EQ(code_of([] { (void)make_params(6, 3, 3, 13); }), Errc::InvalidParams);
    EXPECT_EQ(code_of([] { (void)make_params(6, 3, 6, 13); }), Errc::InvalidParams);
    EXPECT_EQ(code_of([] { (void)make_params(6, 3, 4, 5); }), Errc::InvalidParams);
    EXPECT_EQ(code_of([] { (void)make_params(6, 3, 4, 15); }), Errc::InvalidParams);
}

TEST(MakeParams, ExplicitPointsValidated)
{
    const Field F(13);
    EXPECT_EQ(code_of([&] { (void)make_params(6, 3, 4, 13, ints(F, {0, 2, 3, 4, 5, 6})); }), Errc::InvalidParams);
    // 1 and 12 share lambda = 1.
    EXPECT_EQ(code_of([&] { (void)make_params(6, 3, 4, 13, ints(F, {1, 2, 3, 4, 5, 12})); }), Errc::InvalidParams);
    EXPECT_EQ(code_of([&] { (void)make_params(6, 3, 4, 13, ints(F, {1, 2, 3})); }), Errc::InvalidParams);
    const SystemParams sp = make_params(6, 3, 4, 13, ints(F, {2, 3, 4, 5, 6, 1}));
    EXPECT_EQ(sp.lambda, ints(F, {4, 9, 3, 12, 10, 1}));
}

TEST(MakeParams, FallbackSearchSkipsCollidingPowers)
{
    // Cubes mod 31: 5^3 = 1 = 1^3, 7^3 = 2 = 4^3, 9^3 = 16 = 8^3, 10^3 = 8 = 2^3.
    const SystemParams sp = make_params(7, 4, 6, 31);
    EXPECT_EQ(sp.evalPoints, ints(sp.field, {1, 2, 3, 4, 6, 8, 11}));
    std::set<Fe> l(sp.lambda.begin(), sp.lambda.end());
    EXPECT_EQ(l.size(), 7u);
}

TEST(MakeParams, TooFewDistinctPowers)
{
    // Only six nonzero squares exist mod 13.
    EXPECT_EQ(code_of([] { (void)make_params(8, 3, 4, 13); }), Errc::NoValidPoints);
}

TEST(PackMessage, WorkedExampleLabels)
{
    const SystemParams sp = test::example1();
    const Field& F = sp.field;
    const Vec u = ints(F, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    const MessagePair m = pack_message(sp, u);
    EXPECT_EQ(m.S1, Mat(F, {{1, 2}, {2, 3}}));
    EXPECT_EQ(m.S2, Mat(F, {{4, 5}, {5, 6}}));
    EXPECT_EQ(m.S1p, Mat(F, {{7, 8}, {8, 9}}));
    EXPECT_EQ(m.S2p, Mat(F, {{10, 11}, {11, 12}}));
}

TEST(PackMessage, ZeroAndWrongLength)
{
    const SystemParams sp = test::example1();
    const MessagePair m = pack_message(sp, Vec(12));
    EXPECT_TRUE(m.S1.is_zero() && m.S2.is_zero() && m.S1p.is_zero() && m.S2p.is_zero());
    EXPECT_EQ(code_of([&] { (void)pack_message(sp, Vec(11)); }), Errc::WrongLength);
    EXPECT_EQ(code_of([&] { (void)pack_file(sp, Vec(13)); }), Errc::WrongLength);
}

TEST(PackMessage, RoundTripAndSymmetry)
{
    SplitMix64 rng(11);
    for (auto [n, k, d, p] : {std::tuple{6, 3, 4, 13}, {7, 4, 6, 17}, {10, 5, 8, 43}, {6, 2, 3, 13}}) {
        const SystemParams sp = make_params(n, k, d, p);
        for (int t = 0; t < 20; ++t) {
            const Vec s = rng.elements(sp.field, sp.B());
            const auto parts = pack_file(sp, s);
            ASSERT_EQ(parts.size(), sp.subfiles);
            for (const auto& m : parts)
                for (const Mat* x : {&m.S1, &m.S2, &m.S1p, &m.S2p})
                    ASSERT_EQ(*x, x->transpose());
            ASSERT_EQ(unpack_file(parts), s);
        }
    }
}

TEST(Encode, NodeOneMatchesWorkedExampleSums)
{
    // Node 1 stores u1+u2+u4+u5, u2+u3+u5+u6 and the primed analogues:
    // encoding each unit message must light exactly those coordinates.
    const SystemParams sp = test::example1();
    const Field& F = sp.field;
    const std::vector<std::vector<int>> expect = {
        {1, 2, 4, 5}, {2, 3, 5, 6}, {7, 8, 10, 11}, {8, 9, 11, 12}};
    for (int sym = 1; sym <= 12; ++sym) {
        Vec e(12);
        e[sym - 1] = F.one();
        const auto nodes = encode(sp, pack_message(sp, e));
        Vec got = nodes[0].rowM;
        got.insert(got.end(), nodes[0].rowMp.begin(), nodes[0].rowMp.end());
        for (std::size_t c = 0; c < 4; ++c) {
            const bool in = std::find(expect[c].begin(), expect[c].end(), sym) != expect[c].end();
            EXPECT_EQ(got[c], in ? F.one() : F.zero()) << "symbol u" << sym << " coordinate " << c;
        }
    }
}

TEST(Encode, ZeroMessage)
{
    const SystemParams sp = test::example1();
    for (const auto& s : encode(sp, pack_message(sp, Vec(12)))) {
        EXPECT_EQ(s.rowM, Vec(2));
        EXPECT_EQ(s.rowMp, Vec(2));
    }
}

TEST(Encode, MatchesTwoTermDecomposition)
{
    SplitMix64 rng(12);
    for (auto [n, k, d, p] : {std::tuple{6, 3, 4, 13}, {7, 4, 6, 17}}) {
        const SystemParams sp = make_params(n, k, d, p);
        for (int t = 0; t < 20; ++t) {
            const MessagePair m = pack_message(sp, random_message(sp, rng));
            const auto nodes = encode(sp, m);
            ASSERT_EQ(nodes.size(), sp.n);
            for (NodeId i = 1; i <= sp.n; ++i) {
                ASSERT_EQ(nodes[i - 1].nodeId, i);
                ASSERT_EQ(nodes[i - 1].rowM, two_term_row(sp, i, m.S1, m.S2));
                ASSERT_EQ(nodes[i - 1].rowMp, two_term_row(sp, i, m.S1p, m.S2p));
                ASSERT_EQ(nodes[i - 1].rowM.size() + nodes[i - 1].rowMp.size(), 2 * (sp.k - 1));
            }
        }
    }
}

TEST(Encode, Linear)
{
    SplitMix64 rng(13);
    const SystemParams sp = test::example1();
    const Field& F = sp.field;
    for (int t = 0; t < 20; ++t) {
        const Vec a = random_message(sp, rng), b = random_message(sp, rng);
        Vec s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            s[i] = F.add(a[i], b[i]);
        const auto ea = encode(sp, pack_message(sp, a)), eb = encode(sp, pack_message(sp, b));
        const auto es = encode(sp, pack_message(sp, s));
        for (std::size_t i = 0; i < sp.n; ++i)
            for (std::size_t c = 0; c < sp.alpha0; ++c) {
                ASSERT_EQ(es[i].rowM[c], F.add(ea[i].rowM[c], eb[i].rowM[c]));
                ASSERT_EQ(es[i].rowMp[c], F.add(ea[i].rowMp[c], eb[i].rowMp[c]));
            }
    }
}

TEST(Retrieve, FirstThreeNodes)
{
    SplitMix64 rng(14);
    const SystemParams sp = test::example1();
    const Vec u = random_message(sp, rng);
    const auto nodes = encode(sp, pack_message(sp, u));
    const std::vector<NodeStorage> shares(nodes.begin(), nodes.begin() + 3);
    EXPECT_EQ(unpack_message(retrieve(sp, shares)), u);
}

TEST(Retrieve, ZeroMessage)
{
    const SystemParams sp = test::example1();
    const auto nodes = encode(sp, pack_message(sp, Vec(12)));
    const std::vector<NodeStorage> shares{nodes[5], nodes[1], nodes[3]};
    EXPECT_EQ(unpack_message(retrieve(sp, shares)), Vec(12));
}

TEST(Retrieve, BadShareSets)
{
    const SystemParams sp = test::example1();
    const auto nodes = encode(sp, pack_message(sp, Vec(12)));
    EXPECT_EQ(code_of([&] { (void)retrieve(sp, std::vector<NodeStorage>{nodes[0], nodes[1]}); }), Errc::BadShareSet);
    EXPECT_EQ(code_of([&] { (void)retrieve(sp, std::vector<NodeStorage>{nodes[0], nodes[1], nodes[1]}); }),
              Errc::BadShareSet);
    NodeStorage bogus = nodes[2];
    bogus.nodeId = 9;
    EXPECT_EQ(code_of([&] { (void)retrieve(sp, std::vector<NodeStorage>{nodes[0], nodes[1], bogus}); }),
              Errc::BadShareSet);
}

TEST(Retrieve, ExhaustiveSubsets)
{
    SplitMix64 rng(15);
    for (auto [n, k, d, p] : {std::tuple{6, 3, 4, 13}, {8, 3, 4, 17}, {7, 4, 6, 17}, {5, 2, 2, 7}}) {
        const SystemParams sp = make_params(n, k, d, p);
        for (int t = 0; t < 50; ++t) {
            const Vec u = random_message(sp, rng);
            const auto nodes = encode(sp, pack_message(sp, u));
            for (const auto& subset : test::subsets(sp.n, sp.k)) {
                std::vector<NodeStorage> shares;
                for (NodeId i : subset)
                    shares.push_back(nodes[i - 1]);
                // Share order must not matter.
                if (t % 2)
                    std::reverse(shares.begin(), shares.end());
                ASSERT_EQ(unpack_message(retrieve(sp, shares)), u) << "n=" << n << " k=" << k;
            }
        }
    }
}

TEST(Retrieve, WholeFileWithSubfiles)
{
    SplitMix64 rng(16);
    const SystemParams sp = make_params(6, 2, 3, 13);
    ASSERT_EQ(sp.subfiles, 3u);
    ASSERT_EQ(sp.B(), 12u);
    const Vec u = rng.elements(sp.field, sp.B());
    const FileStorage st = encode_file(sp, u);
    for (const auto& subset : test::subsets(sp.n, sp.k))
        ASSERT_EQ(retrieve_file(sp, st, subset), u);
}
