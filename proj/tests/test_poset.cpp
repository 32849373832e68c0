#include <gtest/gtest.h>

#include <random>
#include <set>

#include "markedord/poset.hpp"
#include "oracles.hpp"

using namespace markedord;

namespace {

using Relations = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<std::string> labels_for(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
    return out;
}

/// Random acyclic relation list: pairs i < j of a shuffled order.
Relations random_relations(std::mt19937& rng, std::size_t n, double density) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(density);
    Relations rel;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng)) rel.emplace_back(perm[i], perm[j]);
    return rel;
}

Poset chain3() { return build_poset({"x1", "x2", "x3"}, {{"x1", "x2"}, {"x2", "x3"}}).poset; }

Poset diamond() {
    return build_poset({"b", "p", "q", "t"}, {{"b", "p"}, {"b", "q"}, {"p", "t"}, {"q", "t"}}).poset;
}

} // namespace

TEST(Poset, LeqOnChain) {
    const Poset P = chain3();
    EXPECT_TRUE(P.leq("x1", "x3"));
    EXPECT_FALSE(P.leq("x3", "x1"));
    for (std::size_t p = 0; p < P.size(); ++p) EXPECT_TRUE(P.leq(p, p));
}

TEST(Poset, UnknownLabelInQuery) {
    const Poset P = chain3();
    try {
        (void)P.leq("x1", "nope");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "UnknownLabel");
    }
}

TEST(Poset, ConstructionErrors) {
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return std::string("none");
    };
    EXPECT_EQ(kind_of([] { build_poset({"a", "a"}, {}); }), "DuplicateLabel");
    EXPECT_EQ(kind_of([] { build_poset({"a", "b"}, {{"a", "c"}}); }), "UnknownLabel");
    EXPECT_EQ(kind_of([] { build_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}); }), "CycleError");
    EXPECT_EQ(kind_of([] { build_poset({"a"}, {{"a", "a"}}); }), "CycleError");
}

TEST(Poset, TransitiveCoversAreStrippedAndReported) {
    auto built = build_poset({"x1", "x2", "x3"}, {{"x1", "x2"}, {"x2", "x3"}, {"x1", "x3"}});
    ASSERT_EQ(built.removed.size(), 1U);
    EXPECT_EQ(built.removed[0], std::make_pair(std::string("x1"), std::string("x3")));
    EXPECT_EQ(built.poset.covers().size(), 2U);
    EXPECT_TRUE(built.poset.leq("x1", "x3"));
}

TEST(Poset, IdealChainsOfAntichainInOrder) {
    const Poset P = build_poset({"p", "q"}, {}).poset;
    const auto chains = ideal_chains(P);
    ASSERT_EQ(chains.size(), 3U);
    EXPECT_EQ(chains[0].ideals, (std::vector<ElementSet>{0b01, 0b11}));
    EXPECT_EQ(chains[1].ideals, (std::vector<ElementSet>{0b10, 0b11}));
    EXPECT_EQ(chains[2].ideals, (std::vector<ElementSet>{0b11}));
    std::size_t maximal = 0;
    for (const auto& c : chains) maximal += c.length() == P.size();
    EXPECT_EQ(maximal, 2U);
}

TEST(Poset, IdealChainsOfTwoChain) {
    const Poset P = build_poset({"x1", "x2"}, {{"x1", "x2"}}).poset;
    const auto chains = ideal_chains(P);
    ASSERT_EQ(chains.size(), 2U);
    EXPECT_EQ(chains[0].ideals, (std::vector<ElementSet>{0b01, 0b11}));
    EXPECT_EQ(chains[1].ideals, (std::vector<ElementSet>{0b11}));
}

TEST(Poset, IdealChainsRespectMaxLength) {
    const Poset P = build_poset({"a", "b", "c"}, {}).poset;
    for (const auto& c : ideal_chains(P, 2)) EXPECT_LE(c.length(), 2U);
    EXPECT_EQ(ideal_chains(P, 1).size(), 1U);
}

TEST(PosetProperty, ClosureCoversAndChainsMatchOracles) {
    std::mt19937 rng(20241);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const auto rel = random_relations(rng, n, 0.4);
        std::vector<Cover> rel_lib(rel.begin(), rel.end());
        const Poset P = Poset::from_relations(labels_for(n), rel_lib);
        const auto le = oracle::closure(n, rel);

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) ASSERT_EQ(P.leq(p, q), le[p][q]);

        const auto want = oracle::covers(le);
        const std::set<std::pair<std::size_t, std::size_t>> got(P.covers().begin(), P.covers().end());
        ASSERT_EQ(got, want);

        std::uint64_t maximal = 0, total = 0;
        std::set<std::vector<ElementSet>> seen;
        for_each_ideal_chain(P, [&](const IdealChain& c) {
            ++total;
            maximal += c.length() == n;
            EXPECT_TRUE(seen.insert(c.ideals).second);
            EXPECT_TRUE(is_ideal_chain_of(P, P.all(), c));
        });
        ASSERT_EQ(maximal, oracle::linear_extensions(le));
        ASSERT_EQ(total, oracle::ideal_chain_count(le));
    }
}

TEST(PosetProperty, LinearExtensionIsCompatible) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 7;
        const auto rel = random_relations(rng, n, 0.5);
        const Poset P = Poset::from_relations(labels_for(n), std::vector<Cover>(rel.begin(), rel.end()));
        const auto& ext = P.linear_extension();
        ASSERT_EQ(ext.size(), n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) EXPECT_FALSE(P.less(ext[j], ext[i]));
    }
}

TEST(FacePartition, Examples) {
    const Poset C = chain3();
    EXPECT_TRUE(is_face_partition(C, {}));
    EXPECT_TRUE(is_face_partition(C, {{0, 1}, {1, 2}}));
    const Poset D = diamond();
    // b<p<t contracted while q stays outside: [b,t] is not inside G.
    EXPECT_FALSE(is_face_partition(D, {{0, 1}, {1, 3}}));
}

TEST(FacePartition, NonCoverIsRejected) {
    const Poset C = chain3();
    try {
        (void)is_face_partition(C, {{0, 2}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "NotACover");
    }
}

TEST(FacePartition, BowtieNeedsAcyclicContraction) {
    // a, c < b, d. G = {a<d, c<b}: each component is an interval, but contracting both
    // yields a 2-cycle, so no order preserving map has exactly these equalities.
    const Poset P = build_poset({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "d"}, {"c", "b"}, {"c", "d"}}).poset;
    const std::vector<Cover> G{{0, 3}, {2, 1}};
    EXPECT_TRUE(satisfies_interval_condition(P, G));
    EXPECT_FALSE(contraction_is_acyclic(P, G));
    EXPECT_FALSE(is_face_partition(P, G));
}

namespace {

/// A cover set is a face partition iff some order preserving map is constant exactly on
/// the connected components of G (elements outside G are singleton classes).
bool face_oracle(const oracle::Matrix& le, const std::vector<std::pair<std::size_t, std::size_t>>& G) {
    const std::size_t n = le.size();
    std::vector<std::size_t> comp(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [a, b] : G) {
            const auto m = std::min(comp[a], comp[b]);
            for (auto& c : comp)
                if ((c == comp[a] || c == comp[b]) && c != m) {
                    c = m;
                    changed = true;
                }
        }
    }
    std::vector<long long> phi(n);
    std::function<bool(std::size_t)> rec = [&](std::size_t p) {
        if (p == n) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    if (le[a][b] && phi[a] > phi[b]) return false;
                    if ((phi[a] == phi[b]) != (comp[a] == comp[b])) return false;
                }
            return true;
        }
        for (long long v = 0; v < static_cast<long long>(n); ++v) {
            phi[p] = v;
            if (rec(p + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

} // namespace

TEST(FacePartitionProperty, AgreesWithGeometricOracle) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const auto rel = random_relations(rng, n, 0.5);
        const Poset P = Poset::from_relations(labels_for(n), std::vector<Cover>(rel.begin(), rel.end()));
        const auto le = oracle::closure(n, rel);
        const auto& cov = P.covers();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cov.size()); ++mask) {
            std::vector<Cover> G;
            for (std::size_t e = 0; e < cov.size(); ++e)
                if (mask >> e & 1U) G.push_back(cov[e]);
            const std::vector<std::pair<std::size_t, std::size_t>> Gp(G.begin(), G.end());
            ASSERT_EQ(is_face_partition(P, G), face_oracle(le, Gp)) << "trial " << trial << " mask " << mask;
        }
    }
}

TEST(Quotient, IdentityOnEmptyPartition) {
    const Poset C = chain3();
    const auto q = quotient(C, {});
    EXPECT_EQ(q.poset.labels(), C.labels());
    EXPECT_EQ(q.map, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Quotient, ContractsSingleCover) {
    const Poset C = chain3();
    const auto q = quotient(C, {{0, 1}});
    ASSERT_EQ(q.poset.size(), 2U);
    EXPECT_EQ(q.poset.label(q.map[0]), "x1x2");
    EXPECT_EQ(q.map[0], q.map[1]);
    EXPECT_TRUE(q.poset.less(q.map[0], q.map[2]));
}

TEST(Quotient, RejectsNonFacePartition) {
    try {
        (void)quotient(diamond(), {{0, 1}, {1, 3}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "NotAFacePartition");
    }
}

TEST(QuotientProperty, MapIsOrderPreserving) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const auto rel = random_relations(rng, n, 0.45);
        const Poset P = Poset::from_relations(labels_for(n), std::vector<Cover>(rel.begin(), rel.end()));
        const auto& cov = P.covers();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cov.size()); ++mask) {
            std::vector<Cover> G;
            for (std::size_t e = 0; e < cov.size(); ++e)
                if (mask >> e & 1U) G.push_back(cov[e]);
            if (!is_face_partition(P, G)) continue;
            const auto q = quotient(P, G);
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t r = 0; r < n; ++r)
                    if (P.leq(p, r)) {
                        ASSERT_TRUE(q.poset.leq(q.map[p], q.map[r]));
                    }
        }
    }
}
