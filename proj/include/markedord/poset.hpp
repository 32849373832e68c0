#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "markedord/error.hpp"

namespace markedord {

/// Subset of a poset's ground set, one bit per element index.
using ElementSet = std::uint64_t;

inline constexpr std::size_t kMaxElements = 64;

inline constexpr ElementSet singleton(std::size_t i) { return ElementSet{1} << i; }
inline constexpr bool contains(ElementSet s, std::size_t i) { return ((s >> i) & 1U) != 0; }
inline constexpr bool is_subset(ElementSet a, ElementSet b) { return (a & ~b) == 0; }
inline constexpr int cardinality(ElementSet s) { return std::popcount(s); }
inline constexpr ElementSet full_set(std::size_t n) {
    return n >= 64 ? ~ElementSet{0} : (ElementSet{1} << n) - 1;
}

template <class F>
void for_each_element(ElementSet s, F&& f) {
    while (s != 0) {
        f(static_cast<std::size_t>(std::countr_zero(s)));
        s &= s - 1;
    }
}

/// (lower, upper) pair of element indices.
using Cover = std::pair<std::size_t, std::size_t>;

/// Finite poset stored as its Hasse diagram plus cached reflexive up/down sets.
/// Immutable after construction. Element index order is the input label order
/// and drives every iteration and output order.
class Poset {
public:
    Poset() = default;

    /// Builds the poset generated by an arbitrary acyclic relation. Relations that are
    /// implied transitively (or repeated) are dropped and, if requested, reported.
    static Poset from_relations(std::vector<std::string> labels, const std::vector<Cover>& relations,
                                std::vector<Cover>* dropped = nullptr) {
        const std::size_t n = labels.size();
        if (n > kMaxElements) throw Error("TooLarge", {std::to_string(n)});
        Poset p;
        p.labels_ = std::move(labels);
        for (std::size_t i = 0; i < n; ++i) {
            if (!p.index_.emplace(p.labels_[i], i).second) throw Error("DuplicateLabel", {p.labels_[i]});
        }

        std::vector<ElementSet> succ(n, 0);
        for (auto [a, b] : relations) {
            if (a >= n || b >= n) throw Error("UnknownLabel", {std::to_string(std::max(a, b))});
            if (a == b) throw Error("CycleError", {p.labels_[a]});
            succ[a] |= singleton(b);
        }

        // Kahn's algorithm, smallest index first.
        std::vector<int> indeg(n, 0);
        for (std::size_t a = 0; a < n; ++a) for_each_element(succ[a], [&](std::size_t b) { ++indeg[b]; });
        std::vector<std::size_t> topo;
        topo.reserve(n);
        ElementSet ready = 0;
        for (std::size_t i = 0; i < n; ++i) if (indeg[i] == 0) ready |= singleton(i);
        while (ready != 0) {
            const auto v = static_cast<std::size_t>(std::countr_zero(ready));
            ready &= ready - 1;
            topo.push_back(v);
            for_each_element(succ[v], [&](std::size_t w) {
                if (--indeg[w] == 0) ready |= singleton(w);
            });
        }
        if (topo.size() != n) {
            // Every vertex left with positive in-degree lies on or behind a cycle; walk
            // predecessors among them until a vertex repeats.
            ElementSet left = full_set(n);
            for (auto v : topo) left &= ~singleton(v);
            std::size_t v = static_cast<std::size_t>(std::countr_zero(left));
            ElementSet seen = 0;
            while (!contains(seen, v)) {
                seen |= singleton(v);
                for (std::size_t u = 0; u < n; ++u) {
                    if (contains(left, u) && contains(succ[u], v)) { v = u; break; }
                }
            }
            throw Error("CycleError", {p.labels_[v]});
        }

        p.up_.assign(n, 0);
        p.down_.assign(n, 0);
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
            ElementSet s = singleton(*it);
            for_each_element(succ[*it], [&](std::size_t w) { s |= p.up_[w]; });
            p.up_[*it] = s;
        }
        for (std::size_t a = 0; a < n; ++a) for_each_element(p.up_[a], [&](std::size_t b) { p.down_[b] |= singleton(a); });

        p.upper_covers_.assign(n, 0);
        p.lower_covers_.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            const ElementSet above = p.up_[a] & ~singleton(a);
            for_each_element(above, [&](std::size_t b) {
                const ElementSet between = above & p.down_[b] & ~singleton(b);
                if (between == 0) {
                    p.upper_covers_[a] |= singleton(b);
                    p.lower_covers_[b] |= singleton(a);
                    p.covers_.emplace_back(a, b);
                }
            });
        }
        if (dropped) {
            dropped->clear();
            std::vector<Cover> seen;
            for (const auto& r : relations) {
                const bool is_cover = contains(p.upper_covers_[r.first], r.second);
                if (!is_cover && std::find(seen.begin(), seen.end(), r) == seen.end()) {
                    dropped->push_back(r);
                    seen.push_back(r);
                }
            }
        }
        p.linear_extension_ = std::move(topo);
        return p;
    }

    std::size_t size() const noexcept { return labels_.size(); }
    ElementSet all() const noexcept { return full_set(size()); }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> find(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index_of(std::string_view label) const {
        auto i = find(label);
        if (!i) throw Error("UnknownLabel", {std::string(label)});
        return *i;
    }

    /// Hasse diagram, sorted by (lower, upper) index.
    const std::vector<Cover>& covers() const noexcept { return covers_; }
    bool is_cover(std::size_t p, std::size_t q) const { return contains(upper_covers_.at(p), q); }

    bool leq(std::size_t p, std::size_t q) const { return contains(up_.at(p), q); }
    bool less(std::size_t p, std::size_t q) const { return p != q && leq(p, q); }
    bool comparable(std::size_t p, std::size_t q) const { return leq(p, q) || leq(q, p); }
    bool leq(std::string_view p, std::string_view q) const { return leq(index_of(p), index_of(q)); }

    /// {q : p <= q}, reflexive.
    ElementSet up_set(std::size_t p) const { return up_.at(p); }
    /// {q : q <= p}, reflexive.
    ElementSet down_set(std::size_t p) const { return down_.at(p); }
    ElementSet upper_covers(std::size_t p) const { return upper_covers_.at(p); }
    ElementSet lower_covers(std::size_t p) const { return lower_covers_.at(p); }

    ElementSet up_closure(ElementSet s) const {
        ElementSet r = 0;
        for_each_element(s, [&](std::size_t p) { r |= up_[p]; });
        return r;
    }
    ElementSet down_closure(ElementSet s) const {
        ElementSet r = 0;
        for_each_element(s, [&](std::size_t p) { r |= down_[p]; });
        return r;
    }

    ElementSet minimal() const {
        ElementSet r = 0;
        for (std::size_t i = 0; i < size(); ++i) if (lower_covers_[i] == 0) r |= singleton(i);
        return r;
    }
    ElementSet maximal() const {
        ElementSet r = 0;
        for (std::size_t i = 0; i < size(); ++i) if (upper_covers_[i] == 0) r |= singleton(i);
        return r;
    }

    bool is_ideal(ElementSet s) const { return down_closure(s) == s; }
    bool is_chain(ElementSet s) const {
        bool ok = true;
        for_each_element(s, [&](std::size_t p) { ok = ok && is_subset(s, up_[p] | down_[p]); });
        return ok;
    }

    /// A fixed linear extension (smallest available index first).
    const std::vector<std::size_t>& linear_extension() const noexcept { return linear_extension_; }

    ElementSet to_set(const std::vector<std::string>& labels) const {
        ElementSet s = 0;
        for (const auto& l : labels) s |= singleton(index_of(l));
        return s;
    }
    std::vector<std::string> to_labels(ElementSet s) const {
        std::vector<std::string> out;
        for_each_element(s, [&](std::size_t p) { out.push_back(labels_[p]); });
        return out;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Cover> covers_;
    std::vector<ElementSet> up_, down_, upper_covers_, lower_covers_;
    std::vector<std::size_t> linear_extension_;
};

struct BuildResult {
    Poset poset;
    /// Input covers that were transitively implied and therefore removed.
    std::vector<std::pair<std::string, std::string>> removed;
};

/// Builds a poset from labels and cover pairs given by label.
inline BuildResult build_poset(std::vector<std::string> labels,
                               const std::vector<std::pair<std::string, std::string>>& covers) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!index.emplace(labels[i], i).second) throw Error("DuplicateLabel", {labels[i]});
    }
    std::vector<Cover> rel;
    rel.reserve(covers.size());
    for (const auto& [a, b] : covers) {
        auto ia = index.find(a);
        if (ia == index.end()) throw Error("UnknownLabel", {a});
        auto ib = index.find(b);
        if (ib == index.end()) throw Error("UnknownLabel", {b});
        rel.emplace_back(ia->second, ib->second);
    }
    std::vector<Cover> dropped;
    BuildResult out{Poset::from_relations(std::move(labels), rel, &dropped), {}};
    for (auto [a, b] : dropped) out.removed.emplace_back(out.poset.label(a), out.poset.label(b));
    return out;
}

// ---------------------------------------------------------------------------
// Order ideals and chains of ideals

/// Strictly increasing chain of order ideals I_0 < I_1 < ... < I_k with I_k the full
/// ground set of the poset (or of the subposet it was built for).
struct IdealChain {
    std::vector<ElementSet> ideals;

    std::size_t length() const noexcept { return ideals.size(); }
    /// I_j \ I_{j-1}.
    ElementSet block(std::size_t j) const { return j == 0 ? ideals.at(0) : ideals.at(j) & ~ideals.at(j - 1); }
    /// Smallest j with p in I_j.
    std::size_t index_of(std::size_t p) const {
        for (std::size_t j = 0; j < ideals.size(); ++j) if (contains(ideals[j], p)) return j;
        throw Error("NotInChain", {std::to_string(p)});
    }
    bool operator==(const IdealChain&) const = default;
};

/// Calls f(B) for every nonempty B within `region` such that B is down-closed relative
/// to `region` (i.e. an order ideal of the induced subposet). Order: ascending bitmask.
template <class F>
void for_each_ideal_of(const Poset& P, ElementSet region, F&& f) {
    std::vector<std::size_t> order;
    for (auto p : P.linear_extension()) if (contains(region, p)) order.push_back(p);
    std::vector<ElementSet> found;
    // Include/exclude along a linear extension: an element may join only if all of its
    // predecessors inside the region already did.
    auto rec = [&](auto&& self, std::size_t t, ElementSet chosen) -> void {
        if (t == order.size()) {
            if (chosen != 0) found.push_back(chosen);
            return;
        }
        const std::size_t e = order[t];
        self(self, t + 1, chosen);
        const ElementSet preds = P.down_set(e) & region & ~singleton(e);
        if (is_subset(preds, chosen)) self(self, t + 1, chosen | singleton(e));
    };
    rec(rec, 0, 0);
    std::sort(found.begin(), found.end());
    for (auto b : found) f(b);
}

/// Streams every chain of order ideals of the subposet induced on `ground` exactly once in
/// a deterministic order (depth first, next block chosen in ascending bitmask order).
/// `max_len` bounds the number of ideals in a chain.
template <class F>
void for_each_ideal_chain_in(const Poset& P, ElementSet ground, F&& f, std::optional<std::size_t> max_len = std::nullopt) {
    if (ground == 0) return;
    IdealChain chain;
    auto rec = [&](auto&& self, ElementSet done) -> void {
        const ElementSet rest = ground & ~done;
        if (rest == 0) {
            f(static_cast<const IdealChain&>(chain));
            return;
        }
        if (max_len && chain.ideals.size() >= *max_len) return;
        for_each_ideal_of(P, rest, [&](ElementSet block) {
            chain.ideals.push_back(done | block);
            self(self, done | block);
            chain.ideals.pop_back();
        });
    };
    rec(rec, 0);
}

/// The same for P itself.
template <class F>
void for_each_ideal_chain(const Poset& P, F&& f, std::optional<std::size_t> max_len = std::nullopt) {
    for_each_ideal_chain_in(P, P.all(), std::forward<F>(f), max_len);
}

inline std::vector<IdealChain> ideal_chains(const Poset& P, std::optional<std::size_t> max_len = std::nullopt) {
    std::vector<IdealChain> out;
    for_each_ideal_chain(P, [&](const IdealChain& c) { out.push_back(c); }, max_len);
    return out;
}

inline std::vector<IdealChain> ideal_chains_in(const Poset& P, ElementSet ground) {
    std::vector<IdealChain> out;
    for_each_ideal_chain_in(P, ground, [&](const IdealChain& c) { out.push_back(c); });
    return out;
}

/// Checks that `chain` is a chain of ideals of the subposet induced on `ground`.
inline bool is_ideal_chain_of(const Poset& P, ElementSet ground, const IdealChain& chain) {
    if (chain.ideals.empty() || chain.ideals.back() != ground) return false;
    ElementSet prev = 0;
    for (auto I : chain.ideals) {
        if (!is_subset(I, ground) || I == prev || !is_subset(prev, I)) return false;
        if ((P.down_closure(I) & ground) != I) return false;
        prev = I;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Face partitions and quotients
//
// A set of covers G is read as the subposet whose connected components (under the
// undirected cover graph) are taken as induced subposets of P.

namespace detail {

inline void check_covers(const Poset& P, const std::vector<Cover>& covers) {
    for (auto [a, b] : covers) {
        if (a >= P.size() || b >= P.size() || !P.is_cover(a, b)) {
            const std::string la = a < P.size() ? P.label(a) : std::to_string(a);
            const std::string lb = b < P.size() ? P.label(b) : std::to_string(b);
            throw Error("NotACover", {la, lb});
        }
    }
}

/// Union-find component id per element; ids are dense and ordered by smallest member.
inline std::vector<std::size_t> component_ids(std::size_t n, const std::vector<Cover>& covers) {
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : covers) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<std::size_t> id(n), root_id(n, n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto r = find(i);
        if (root_id[r] == n) root_id[r] = next++;
        id[i] = root_id[r];
    }
    return id;
}

/// Contracted digraph on components: succ[c] = components reachable by one cover.
inline std::vector<ElementSet> contracted_successors(const Poset& P, const std::vector<std::size_t>& comp,
                                                     std::size_t count) {
    std::vector<ElementSet> succ(count, 0);
    for (auto [a, b] : P.covers()) {
        if (comp[a] != comp[b]) succ[comp[a]] |= singleton(comp[b]);
    }
    return succ;
}

/// Strongly connected components of a small digraph given by successor masks.
inline std::vector<std::size_t> strong_components(const std::vector<ElementSet>& succ) {
    const std::size_t n = succ.size();
    std::vector<ElementSet> reach(n);
    for (std::size_t v = 0; v < n; ++v) {
        ElementSet r = singleton(v), frontier = singleton(v);
        while (frontier != 0) {
            ElementSet next = 0;
            for_each_element(frontier, [&](std::size_t u) { next |= succ[u]; });
            frontier = next & ~r;
            r |= next;
        }
        reach[v] = r;
    }
    std::vector<std::size_t> id(n, n);
    std::size_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (id[v] != n) continue;
        for (std::size_t u = v; u < n; ++u) {
            if (contains(reach[v], u) && contains(reach[u], v)) id[u] = next;
        }
        ++next;
    }
    return id;
}

inline std::size_t count_ids(const std::vector<std::size_t>& id) {
    return id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
}

} // namespace detail

/// Component membership masks of the subposet generated by `covers`.
inline std::vector<ElementSet> face_components(const Poset& P, const std::vector<Cover>& covers) {
    detail::check_covers(P, covers);
    const auto comp = detail::component_ids(P.size(), covers);
    std::vector<ElementSet> out(detail::count_ids(comp), 0);
    for (std::size_t i = 0; i < P.size(); ++i) out[comp[i]] |= singleton(i);
    return out;
}

/// Interval condition: whenever p <= q inside one component, the whole interval [p,q]_P
/// lies in that component.
inline bool satisfies_interval_condition(const Poset& P, const std::vector<Cover>& covers) {
    for (auto c : face_components(P, covers)) {
        bool ok = true;
        for_each_element(c, [&](std::size_t p) {
            for_each_element(c & P.up_set(p), [&](std::size_t q) {
                ok = ok && is_subset(P.up_set(p) & P.down_set(q), c);
            });
        });
        if (!ok) return false;
    }
    return true;
}

/// Contracting every component of `covers` in the Hasse diagram leaves an acyclic digraph.
inline bool contraction_is_acyclic(const Poset& P, const std::vector<Cover>& covers) {
    detail::check_covers(P, covers);
    const auto comp = detail::component_ids(P.size(), covers);
    const auto succ = detail::contracted_successors(P, comp, detail::count_ids(comp));
    const auto scc = detail::strong_components(succ);
    return detail::count_ids(scc) == succ.size();
}

/// True iff `covers` generates a face partition of P. The interval condition alone admits
/// components that are individually convex but mutually interlocked (a bowtie split into
/// its two diagonals), so acyclicity of the contraction is required as well.
inline bool is_face_partition(const Poset& P, const std::vector<Cover>& covers) {
    return satisfies_interval_condition(P, covers) && contraction_is_acyclic(P, covers);
}

/// Smallest face partition containing `covers`: components lying on a common cycle of the
/// contraction are merged until the contraction is acyclic. Returns every cover of P
/// inside the resulting components.
inline std::vector<Cover> close_face_partition(const Poset& P, std::vector<Cover> covers) {
    detail::check_covers(P, covers);
    for (;;) {
        const auto comp = detail::component_ids(P.size(), covers);
        const auto succ = detail::contracted_successors(P, comp, detail::count_ids(comp));
        const auto scc = detail::strong_components(succ);
        std::vector<Cover> next;
        for (auto [a, b] : P.covers()) {
            if (scc[comp[a]] == scc[comp[b]]) next.emplace_back(a, b);
        }
        if (next == covers) return next;
        covers = std::move(next);
    }
}

struct Quotient {
    Poset poset;
    /// Surjection P -> P/G by element index.
    std::vector<std::size_t> map;
};

/// Contracts the components of a face partition. Class labels concatenate member labels
/// in element order (falling back to `{a,b}` if that would collide).
inline Quotient quotient(const Poset& P, const std::vector<Cover>& covers) {
    if (!is_face_partition(P, covers)) throw Error("NotAFacePartition");
    const auto comp = detail::component_ids(P.size(), covers);
    const std::size_t count = detail::count_ids(comp);

    auto make_labels = [&](bool braced) {
        std::vector<std::string> labels(count);
        std::vector<int> members(count, 0);
        for (std::size_t i = 0; i < P.size(); ++i) ++members[comp[i]];
        for (std::size_t i = 0; i < P.size(); ++i) {
            auto& l = labels[comp[i]];
            if (braced && members[comp[i]] > 1) l += l.empty() ? "{" : ",";
            l += P.label(i);
        }
        if (braced) {
            for (std::size_t c = 0; c < count; ++c) if (members[c] > 1) labels[c] += "}";
        }
        return labels;
    };
    auto labels = make_labels(false);
    if (std::unordered_set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
        labels = make_labels(true);
    }

    std::vector<Cover> rel;
    for (auto [a, b] : P.covers()) {
        if (comp[a] != comp[b]) rel.emplace_back(comp[a], comp[b]);
    }
    return {Poset::from_relations(std::move(labels), rel), comp};
}

} // namespace markedord
