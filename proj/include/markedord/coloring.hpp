#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "markedord/error.hpp"
#include "markedord/marked_order.hpp"
#include "markedord/parallel.hpp"
#include "markedord/polynomial.hpp"
#include "markedord/poset.hpp"

namespace markedord::coloring {

/// Simple undirected graph; edges stored as (u, v) with u < v, sorted.
struct Graph {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<ElementSet> adjacency;

    std::size_t size() const noexcept { return vertices.size(); }
    std::size_t index_of(const std::string& label) const {
        auto it = std::find(vertices.begin(), vertices.end(), label);
        if (it == vertices.end()) throw Error("UnknownLabel", {label});
        return static_cast<std::size_t>(it - vertices.begin());
    }
    bool adjacent(std::size_t u, std::size_t v) const { return contains(adjacency.at(u), v); }
};

inline Graph make_graph_by_index(std::vector<std::string> vertices, std::vector<std::pair<std::size_t, std::size_t>> edges) {
    if (vertices.size() > kMaxElements - 2) throw Error("TooLarge", {std::to_string(vertices.size())});
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j]) throw Error("DuplicateLabel", {vertices[i]});
    Graph g;
    g.vertices = std::move(vertices);
    g.adjacency.assign(g.size(), 0);
    for (auto [u, v] : edges) {
        if (u == v) throw Error("SelfLoop", {g.vertices.at(u)});
        if (u > v) std::swap(u, v);
        if (g.adjacent(u, v)) throw Error("MultiEdge", {g.vertices[u], g.vertices[v]});
        g.adjacency[u] |= singleton(v);
        g.adjacency[v] |= singleton(u);
        g.edges.emplace_back(u, v);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

inline Graph make_graph(std::vector<std::string> vertices,
                        const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (const auto& [a, b] : edges) {
        auto ia = std::find(vertices.begin(), vertices.end(), a);
        if (ia == vertices.end()) throw Error("UnknownLabel", {a});
        auto ib = std::find(vertices.begin(), vertices.end(), b);
        if (ib == vertices.end()) throw Error("UnknownLabel", {b});
        idx.emplace_back(ia - vertices.begin(), ib - vertices.begin());
    }
    return make_graph_by_index(std::move(vertices), std::move(idx));
}

/// c : A -> [k]; colors[v] == 0 means v is not in A.
struct PartialColoring {
    unsigned palette = 0;
    std::vector<unsigned> colors;

    ElementSet domain() const {
        ElementSet s = 0;
        for (std::size_t v = 0; v < colors.size(); ++v) if (colors[v] != 0) s |= singleton(v);
        return s;
    }
};

inline PartialColoring make_coloring(const Graph& g, unsigned palette, const std::map<std::string, unsigned>& colors) {
    PartialColoring c{palette, std::vector<unsigned>(g.size(), 0)};
    for (const auto& [label, col] : colors) {
        if (col < 1 || col > palette) throw Error("ColorOutOfRange", {label, std::to_string(col)});
        c.colors[g.index_of(label)] = col;
    }
    return c;
}

/// Direction of every edge: bit e set means edges[e] runs from .second to .first.
struct Orientation {
    std::uint64_t reversed = 0;
};

namespace detail {

inline void require_palette(const PartialColoring& c, long long m) {
    if (m < static_cast<long long>(c.palette)) throw Error("PaletteTooSmall", {std::to_string(m), std::to_string(c.palette)});
}

inline void require_orientable(const Graph& g) {
    if (g.edges.size() > 40) throw Error("TooLarge", {std::to_string(g.edges.size()) + " edges"});
}

/// Strict reachability sets of an orientation, or nullopt if it has a directed cycle.
inline std::optional<std::vector<ElementSet>> reachability(const Graph& g, Orientation o) {
    const std::size_t n = g.size();
    std::vector<ElementSet> succ(n, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        if ((o.reversed >> e) & 1U) std::swap(u, v);
        succ[u] |= singleton(v);
    }
    std::vector<ElementSet> reach(n, 0);
    std::vector<int> state(n, 0); // 0 new, 1 on stack, 2 done
    bool cyclic = false;
    auto dfs = [&](auto&& self, std::size_t v) -> void {
        state[v] = 1;
        for_each_element(succ[v], [&](std::size_t w) {
            if (state[w] == 1) cyclic = true;
            else if (state[w] == 0) self(self, w);
            reach[v] |= singleton(w) | reach[w];
        });
        state[v] = 2;
    };
    for (std::size_t v = 0; v < n && !cyclic; ++v) if (state[v] == 0) dfs(dfs, v);
    if (cyclic) return std::nullopt;
    return reach;
}

} // namespace detail

/// Proper m-colourings extending c, by direct enumeration.
inline Integer count_proper_extensions(const Graph& g, const PartialColoring& c, long long m) {
    detail::require_palette(c, m);
    for (auto [u, v] : g.edges)
        if (c.colors[u] != 0 && c.colors[u] == c.colors[v]) return 0;
    std::vector<long long> col(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v) col[v] = c.colors[v];
    std::vector<std::size_t> free;
    for (std::size_t v = 0; v < g.size(); ++v) if (c.colors[v] == 0) free.push_back(v);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == free.size()) {
            ++count;
            return;
        }
        const std::size_t v = free[t];
        for (long long x = 1; x <= m; ++x) {
            bool ok = true;
            for_each_element(g.adjacency[v], [&](std::size_t w) { ok = ok && col[w] != x; });
            if (!ok) continue;
            col[v] = x;
            self(self, t + 1);
            col[v] = 0;
        }
    };
    rec(rec, 0);
    return Integer(static_cast<unsigned long>(count));
}

/// chi_{G,c}(m) interpolated from direct counts at m = k, ..., k + |V \ A|, or nullopt when
/// no proper extension exists for any m.
inline std::optional<MultiPoly> chi_polynomial(const Graph& g, const PartialColoring& c) {
    const auto free = static_cast<long long>(g.size()) - cardinality(c.domain());
    std::vector<std::pair<Integer, Rational>> samples;
    bool any = false;
    for (long long i = 0; i <= free; ++i) {
        const long long m = static_cast<long long>(c.palette) + i;
        Integer v = count_proper_extensions(g, c, m);
        any = any || v != 0;
        samples.emplace_back(Integer(static_cast<long>(m)), Rational(v));
    }
    if (!any) return std::nullopt;
    return interpolate_univariate(samples, "m");
}

/// Identifies non-adjacent marked vertices of equal colour (merged labels concatenate);
/// nullopt if two adjacent marked vertices share a colour. The result has injective c.
inline std::optional<std::pair<Graph, PartialColoring>> contract_equal_colors(const Graph& g, const PartialColoring& c) {
    for (auto [u, v] : g.edges)
        if (c.colors[u] != 0 && c.colors[u] == c.colors[v]) return std::nullopt;
    // Every vertex maps to the first vertex of its colour class.
    std::vector<std::size_t> rep(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        rep[v] = v;
        if (c.colors[v] == 0) continue;
        for (std::size_t u = 0; u < v; ++u) {
            if (c.colors[u] == c.colors[v]) {
                rep[v] = u;
                break;
            }
        }
    }
    std::vector<std::size_t> new_index(g.size(), SIZE_MAX);
    std::vector<std::string> labels;
    PartialColoring out{c.palette, {}};
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (rep[v] == v) {
            new_index[v] = labels.size();
            labels.push_back(g.vertices[v]);
            out.colors.push_back(c.colors[v]);
        } else {
            labels[new_index[rep[v]]] += g.vertices[v];
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto [u, v] : g.edges) {
        auto a = new_index[rep[u]], b = new_index[rep[v]];
        if (a > b) std::swap(a, b);
        if (std::find(edges.begin(), edges.end(), std::make_pair(a, b)) == edges.end()) edges.emplace_back(a, b);
    }
    return std::make_pair(make_graph_by_index(std::move(labels), std::move(edges)), out);
}

/// Reachability poset of an acyclic orientation of the suspension: 0^ below every vertex,
/// 1^ above every vertex. The extra elements are the last two indices.
inline Poset suspension_poset(const Graph& g, Orientation o) {
    std::vector<std::string> labels = g.vertices;
    std::string bottom = "^0", top = "^1";
    while (std::find(labels.begin(), labels.end(), bottom) != labels.end()) bottom = "^" + bottom;
    while (std::find(labels.begin(), labels.end(), top) != labels.end()) top = "^" + top;
    const std::size_t n = g.size();
    labels.push_back(bottom);
    labels.push_back(top);
    std::vector<Cover> rel;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        if ((o.reversed >> e) & 1U) std::swap(u, v);
        rel.emplace_back(u, v);
    }
    for (std::size_t v = 0; v < n; ++v) {
        rel.emplace_back(n, v);
        rel.emplace_back(v, n + 1);
    }
    if (n == 0) rel.emplace_back(n, n + 1);
    return Poset::from_relations(std::move(labels), rel);
}

/// chi_{G,c}(m) through the suspension: the sum over acyclic orientations sigma with no
/// directed path a -> b between marked vertices with c(a) > c(b) of the number of strict
/// extensions of c'_m (0 at 0^, m+1 at 1^) on P_sigma. Strict extensions are obtained from
/// the cell polynomial by reciprocity.
inline Integer orientation_sum_count(const Graph& graph, const PartialColoring& coloring, long long m) {
    detail::require_palette(coloring, m);
    const auto reduced = contract_equal_colors(graph, coloring);
    if (!reduced) return 0;
    const auto& [g, c] = *reduced;
    detail::require_orientable(g);
    const ElementSet A = c.domain();
    const std::size_t n = g.size();
    return parallel_sum<Integer>(std::size_t{1} << g.edges.size(), [&](std::size_t bits) -> Integer {
        const Orientation o{bits};
        const auto reach = detail::reachability(g, o);
        if (!reach) return 0;
        bool allowed = true;
        for_each_element(A, [&](std::size_t a) {
            for_each_element((*reach)[a] & A, [&](std::size_t b) { allowed = allowed && c.colors[a] <= c.colors[b]; });
        });
        if (!allowed) return 0;
        Marking mk;
        mk.poset = suspension_poset(g, o);
        mk.marked = A | singleton(n) | singleton(n + 1);
        mk.values.assign(n + 2, 0);
        for_each_element(A, [&](std::size_t a) { mk.values[a] = c.colors[a]; });
        mk.values[n + 1] = m + 1;
        return reciprocity_count(mk);
    });
}

/// Pairs (c^, sigma): c^ any m-colouring extending c, sigma an acyclic orientation directing
/// every edge with c^(u) < c^(v) from u to v, with no directed path between two distinct
/// vertices of one colour class of c.
inline Integer reciprocity_pairs(const Graph& g, const PartialColoring& c, long long m) {
    detail::require_palette(c, m);
    detail::require_orientable(g);
    const ElementSet A = c.domain();
    std::vector<std::uint64_t> valid;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g.edges.size()); ++bits) {
        const auto reach = detail::reachability(g, Orientation{bits});
        if (!reach) continue;
        bool ok = true;
        for_each_element(A, [&](std::size_t a) {
            for_each_element((*reach)[a] & A, [&](std::size_t b) { ok = ok && c.colors[a] != c.colors[b]; });
        });
        if (ok) valid.push_back(bits);
    }

    std::vector<long long> col(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v) col[v] = c.colors[v];
    std::vector<std::size_t> free;
    for (std::size_t v = 0; v < g.size(); ++v) if (c.colors[v] == 0) free.push_back(v);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t < free.size()) {
            for (long long x = 1; x <= m; ++x) {
                col[free[t]] = x;
                self(self, t + 1);
            }
            return;
        }
        std::uint64_t fixed = 0, forced = 0;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto [u, v] = g.edges[e];
            if (col[u] == col[v]) continue;
            fixed |= std::uint64_t{1} << e;
            if (col[u] > col[v]) forced |= std::uint64_t{1} << e;
        }
        for (auto bits : valid) count += (bits & fixed) == forced ? 1 : 0;
    };
    rec(rec, 0);
    return Integer(static_cast<unsigned long>(count));
}

/// Acyclic orientations with no directed path a -> b for marked a != b with c(a) >= c(b).
inline Integer constrained_acyclic_count(const Graph& g, const PartialColoring& c) {
    detail::require_orientable(g);
    const ElementSet A = c.domain();
    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << g.edges.size()); ++bits) {
        const auto reach = detail::reachability(g, Orientation{bits});
        if (!reach) continue;
        bool ok = true;
        for_each_element(A, [&](std::size_t a) {
            for_each_element((*reach)[a] & A, [&](std::size_t b) { ok = ok && c.colors[a] < c.colors[b]; });
        });
        if (ok) ++count;
    }
    return Integer(static_cast<unsigned long>(count));
}

} // namespace markedord::coloring
