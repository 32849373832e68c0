#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "markedord/coloring.hpp"
#include "markedord/marked_order.hpp"
#include "markedord/poset.hpp"

namespace markedord::corpus {

/// Seeded generator with a portable bounded draw, so a seed names the same corpus everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    long long range(long long lo, long long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(engine_() % span);
    }
    bool chance(unsigned percent) { return range(0, 99) < static_cast<long long>(percent); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(range(0, static_cast<long long>(i) - 1))]);
    }

private:
    std::mt19937_64 engine_;
};

inline constexpr long long kValueMin = -3;
inline constexpr long long kValueMax = 5;

/// Random poset on n elements labelled x1..xn: each pair i < j of a random
/// permutation is related with probability `percent`.
inline Poset random_poset(Rng& rng, std::size_t n, unsigned percent = 35) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<Cover> rel;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.chance(percent)) rel.emplace_back(perm[i], perm[j]);
    return Poset::from_relations(std::move(labels), rel);
}

/// Random poset with a unique minimum x1 and maximum xn around a random core.
inline Poset random_bounded_poset(Rng& rng, std::size_t n) {
    const std::size_t core = n - 2;
    const Poset inner = random_poset(rng, core, 40);
    std::vector<std::string> labels{"x1"};
    for (std::size_t i = 0; i < core; ++i) labels.push_back("x" + std::to_string(i + 2));
    labels.push_back("x" + std::to_string(n));
    std::vector<Cover> rel;
    for (auto [a, b] : inner.covers()) rel.emplace_back(a + 1, b + 1);
    for (std::size_t i = 1; i <= core; ++i) {
        rel.emplace_back(0, i);
        rel.emplace_back(i, n - 1);
    }
    if (core == 0) rel.emplace_back(0, n - 1);
    return Poset::from_relations(std::move(labels), rel);
}

/// Uniformly random linear extension by repeatedly removing a random minimal element.
inline std::vector<std::size_t> random_linear_extension(Rng& rng, const Poset& P) {
    std::vector<std::size_t> order;
    ElementSet placed = 0;
    while (order.size() < P.size()) {
        std::vector<std::size_t> avail;
        for_each_element(P.all() & ~placed, [&](std::size_t p) {
            if (is_subset(P.down_set(p) & ~singleton(p), placed)) avail.push_back(p);
        });
        const auto p = avail[static_cast<std::size_t>(rng.range(0, static_cast<long long>(avail.size()) - 1))];
        order.push_back(p);
        placed |= singleton(p);
    }
    return order;
}

/// Order-preserving values on `marked`: sorted random draws laid along a random linear extension.
inline Marking random_marking(Rng& rng, Poset P, ElementSet marked, long long lo = kValueMin, long long hi = kValueMax) {
    std::vector<long long> draws;
    for (int i = 0; i < cardinality(marked); ++i) draws.push_back(rng.range(lo, hi));
    std::sort(draws.begin(), draws.end());
    Marking m;
    m.values.assign(P.size(), 0);
    m.marked = marked;
    std::size_t next = 0;
    for (auto p : random_linear_extension(rng, P))
        if (contains(marked, p)) m.values[p] = draws[next++];
    m.poset = std::move(P);
    return m;
}

struct MarkingInstance {
    Marking marking;
    bool chain_marked = false;
};

/// Deterministic corpus of valid markings on posets with at most 7 elements. Every fourth
/// instance is a bounded poset marked along a chain from its minimum to its maximum.
inline std::vector<MarkingInstance> marking_corpus(std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    std::vector<MarkingInstance> out;
    for (std::size_t t = 0; t < count; ++t) {
        if (t % 4 == 3) {
            Poset P = random_bounded_poset(rng, static_cast<std::size_t>(rng.range(3, 7)));
            const std::size_t top = P.size() - 1;
            ElementSet chain = singleton(0) | singleton(top);
            std::size_t cur = 0;
            for (;;) {
                std::vector<std::size_t> above;
                for_each_element(P.up_set(cur) & ~singleton(cur) & ~singleton(top), [&](std::size_t p) { above.push_back(p); });
                if (above.empty() || !rng.chance(60)) break;
                cur = above[static_cast<std::size_t>(rng.range(0, static_cast<long long>(above.size()) - 1))];
                chain |= singleton(cur);
            }
            out.push_back({random_marking(rng, std::move(P), chain), true});
        } else {
            // Mostly 3..7 elements; tiny posets only occasionally.
            const long long n = t % 8 == 0 ? rng.range(1, 2) : rng.range(3, 7);
            Poset P = random_poset(rng, static_cast<std::size_t>(n), 55);
            ElementSet A = P.minimal() | P.maximal();
            for_each_element(P.all() & ~A, [&](std::size_t p) {
                if (rng.chance(20)) A |= singleton(p);
            });
            out.push_back({random_marking(rng, std::move(P), A), false});
        }
    }
    return out;
}

struct ColoringInstance {
    coloring::Graph graph;
    coloring::PartialColoring coloring;
};

/// Random graphs on 1..5 vertices with random partial colorings, palette k in 1..3.
inline std::vector<ColoringInstance> coloring_corpus(std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    std::vector<ColoringInstance> out;
    for (std::size_t t = 0; t < count; ++t) {
        const auto n = static_cast<std::size_t>(rng.range(1, 5));
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.chance(50)) edges.emplace_back(i, j);
        auto g = coloring::make_graph_by_index(std::move(labels), std::move(edges));
        coloring::PartialColoring c{static_cast<unsigned>(rng.range(1, 3)), std::vector<unsigned>(n, 0)};
        for (std::size_t v = 0; v < n; ++v)
            if (rng.chance(40)) c.colors[v] = static_cast<unsigned>(rng.range(1, c.palette));
        out.push_back({std::move(g), std::move(c)});
    }
    return out;
}

} // namespace markedord::corpus
