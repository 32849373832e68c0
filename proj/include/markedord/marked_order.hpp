#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "markedord/error.hpp"
#include "markedord/polynomial.hpp"
#include "markedord/poset.hpp"

namespace markedord {

/// Integer marking lambda : A -> Z on a subposet A of P.
struct Marking {
    Poset poset;
    ElementSet marked = 0;
    /// Indexed by element; entries outside `marked` are ignored.
    std::vector<long long> values;

    long long value(std::size_t p) const { return values.at(p); }

    std::vector<std::string> marked_labels() const { return poset.to_labels(marked); }
};

inline Marking make_marking(Poset poset, const std::map<std::string, long long>& values) {
    Marking m;
    m.values.assign(poset.size(), 0);
    for (const auto& [label, v] : values) {
        const auto i = poset.index_of(label);
        m.marked |= singleton(i);
        m.values[i] = v;
    }
    m.poset = std::move(poset);
    return m;
}

/// The ideal chain of A given by the level sets of lambda, in increasing value order.
using CellSignature = IdealChain;

inline void validate(const Marking& m) {
    const Poset& P = m.poset;
    if (m.values.size() != P.size()) throw Error("ArityMismatch", {std::to_string(m.values.size())});
    const ElementSet extremes = P.minimal() | P.maximal();
    for_each_element(extremes & ~m.marked, [&](std::size_t p) {
        throw InvalidMarking("MissingExtremes", {P.label(p)});
    });
    for_each_element(m.marked, [&](std::size_t a) {
        for_each_element(m.marked & P.up_set(a), [&](std::size_t b) {
            if (m.value(a) > m.value(b)) throw InvalidMarking("NotOrderPreserving", {P.label(a), P.label(b)});
        });
    });
}

inline bool is_valid(const Marking& m) {
    try {
        validate(m);
        return true;
    } catch (const InvalidMarking&) {
        return false;
    }
}

inline CellSignature cell_of(const Marking& m) {
    validate(m);
    std::vector<long long> levels;
    for_each_element(m.marked, [&](std::size_t a) { levels.push_back(m.value(a)); });
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    CellSignature cell;
    ElementSet acc = 0;
    for (auto v : levels) {
        for_each_element(m.marked, [&](std::size_t a) {
            if (m.value(a) == v) acc |= singleton(a);
        });
        cell.ideals.push_back(acc);
    }
    return cell;
}

/// Elements whose value is pinned: a <= p <= b for markers a, b with equal values.
inline ElementSet sandwiched(const Marking& m) {
    const Poset& P = m.poset;
    ElementSet r = 0;
    for_each_element(m.marked, [&](std::size_t a) {
        for_each_element(m.marked & P.up_set(a), [&](std::size_t b) {
            if (m.value(a) == m.value(b)) r |= P.up_set(a) & P.down_set(b);
        });
    });
    return r;
}

inline std::size_t dimension(const Marking& m) {
    validate(m);
    return static_cast<std::size_t>(cardinality(m.poset.all() & ~sandwiched(m)));
}

namespace detail {

/// Number of free blocks between consecutive marker blocks, one entry per gap.
using GapProfile = std::vector<unsigned>;

/// Enumerates chains of ideals of P in which the markers appear exactly as the ordered
/// classes prescribe: class c fills one block on its own (no other marker alongside),
/// and classes occur in order. Blocks without markers are free. `caps`, if given, bounds
/// the free blocks allowed in each gap.
template <class Visit>
void for_each_compatible_chain(const Poset& P, const std::vector<ElementSet>& classes,
                               const std::vector<unsigned>* caps, Visit&& visit) {
    const std::size_t r = classes.size();
    // Up-closure of all classes from index c onwards; a block placed while class c is
    // pending must avoid every element above a later class.
    std::vector<ElementSet> later_up(r + 1, 0);
    for (std::size_t c = r; c-- > 0;) later_up[c] = later_up[c + 1] | P.up_closure(classes[c]);
    ElementSet markers = 0;
    for (auto c : classes) markers |= c;

    IdealChain chain;
    GapProfile gaps;
    auto rec = [&](auto&& self, ElementSet done, std::size_t c, unsigned free_run) -> void {
        const ElementSet rest = P.all() & ~done;
        if (rest == 0) {
            if (c == r) visit(static_cast<const GapProfile&>(gaps), static_cast<const IdealChain&>(chain));
            return;
        }
        if (c == r) return;
        const ElementSet region = rest & ~later_up[c + 1];
        const bool may_add_free = c > 0 && (!caps || free_run < (*caps)[c - 1]);
        for_each_ideal_of(P, region, [&](ElementSet block) {
            const ElementSet hit = block & markers;
            if (hit == 0) {
                if (!may_add_free) return;
                chain.ideals.push_back(done | block);
                self(self, done | block, c, free_run + 1);
                chain.ideals.pop_back();
            } else if (hit == classes[c]) {
                chain.ideals.push_back(done | block);
                if (c > 0) gaps.push_back(free_run);
                self(self, done | block, c + 1, 0);
                if (c > 0) gaps.pop_back();
                chain.ideals.pop_back();
            }
        });
    };
    rec(rec, 0, 0, 0);
}

/// Histogram of gap profiles over all compatible chains.
inline std::map<GapProfile, std::uint64_t> gap_histogram(const Poset& P, const std::vector<ElementSet>& classes,
                                                         const std::vector<unsigned>* caps) {
    std::map<GapProfile, std::uint64_t> hist;
    for_each_compatible_chain(P, classes, caps, [&](const GapProfile& g, const IdealChain&) { ++hist[g]; });
    return hist;
}

struct LevelClasses {
    std::vector<ElementSet> classes;
    std::vector<long long> values;
};

inline LevelClasses level_classes(const Marking& m) {
    LevelClasses out;
    const auto cell = cell_of(m);
    for (std::size_t j = 0; j < cell.length(); ++j) {
        out.classes.push_back(cell.block(j));
        out.values.push_back(m.value(static_cast<std::size_t>(std::countr_zero(cell.block(j)))));
    }
    return out;
}

} // namespace detail

/// Chains of ideals of P compatible with lambda: i(I,a) < i(I,b) iff lambda(a) < lambda(b).
inline std::vector<IdealChain> compatible_chains(const Marking& m) {
    const auto lc = detail::level_classes(m);
    std::vector<IdealChain> out;
    detail::for_each_compatible_chain(m.poset, lc.classes, nullptr,
                                      [&](const detail::GapProfile&, const IdealChain& c) { out.push_back(c); });
    return out;
}

/// Number of integer points of the marked order polytope. Each integer extension lies in
/// the relative interior of exactly one cell of the canonical subdivision; a compatible
/// chain with d_j free blocks in a gap of width D_j contributes prod C(D_j - 1, d_j).
inline Integer count_extensions(const Marking& m) {
    const auto lc = detail::level_classes(m);
    std::vector<unsigned> caps;
    for (std::size_t j = 0; j + 1 < lc.values.size(); ++j) {
        caps.push_back(static_cast<unsigned>(lc.values[j + 1] - lc.values[j] - 1));
    }
    Integer total = 0;
    for (const auto& [gaps, mult] : detail::gap_histogram(m.poset, lc.classes, &caps)) {
        Integer term = static_cast<unsigned long>(mult);
        for (std::size_t j = 0; j < gaps.size(); ++j) {
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), caps[j], gaps[j]);
            term *= b;
        }
        total += term;
    }
    return total;
}

namespace detail {

/// Backtracking over a linear extension. Free elements range between the largest value
/// among their predecessors and the smallest marker value above them.
inline std::uint64_t brute_force_count(const Marking& m, bool strict) {
    const Poset& P = m.poset;
    const std::size_t n = P.size();
    const auto& order = P.linear_extension();

    std::vector<long long> upper(n, std::numeric_limits<long long>::max());
    for (std::size_t p = 0; p < n; ++p) {
        for_each_element(P.up_set(p) & m.marked, [&](std::size_t b) { upper[p] = std::min(upper[p], m.value(b)); });
    }
    // equal_ok[p]: predecessors q of p that may share p's value in a strict extension.
    std::vector<ElementSet> equal_ok(n, 0);
    if (strict) {
        for (std::size_t p = 0; p < n; ++p) {
            for_each_element(P.down_set(p) & ~singleton(p), [&](std::size_t q) {
                bool ok = false;
                for_each_element(P.down_set(q) & m.marked, [&](std::size_t a) {
                    for_each_element(P.up_set(p) & m.marked, [&](std::size_t b) {
                        ok = ok || m.value(a) == m.value(b);
                    });
                });
                if (ok) equal_ok[p] |= singleton(q);
            });
        }
    }

    std::vector<long long> phi(n, 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == n) {
            ++count;
            return;
        }
        const std::size_t p = order[t];
        const ElementSet preds = P.down_set(p) & ~singleton(p);
        long long lo = std::numeric_limits<long long>::min();
        for_each_element(preds, [&](std::size_t q) { lo = std::max(lo, phi[q]); });
        auto admissible = [&](long long v) {
            if (!strict || v != lo) return true;
            bool ok = true;
            for_each_element(preds & ~equal_ok[p], [&](std::size_t q) { ok = ok && phi[q] != v; });
            return ok;
        };
        if (contains(m.marked, p)) {
            const long long v = m.value(p);
            if (v < lo || !admissible(v)) return;
            phi[p] = v;
            self(self, t + 1);
            return;
        }
        // Free elements always have a marker below (minimal elements are marked).
        for (long long v = lo; v <= upper[p]; ++v) {
            if (!admissible(v)) continue;
            phi[p] = v;
            self(self, t + 1);
        }
    };
    rec(rec, 0);
    return count;
}

} // namespace detail

/// Oracle for count_extensions by direct enumeration.
inline Integer count_extensions_bruteforce(const Marking& m) {
    validate(m);
    return Integer(static_cast<unsigned long>(detail::brute_force_count(m, false)));
}

/// Integer extensions in which p < q with equal values only happens between markers
/// a <= p < q <= b with lambda(a) = lambda(b).
inline Integer count_strict_extensions(const Marking& m) {
    validate(m);
    return Integer(static_cast<unsigned long>(detail::brute_force_count(m, true)));
}

/// Polynomial in {x_a : a in A} (named by the labels of A) that equals count_extensions
/// for every integer marking whose cell is `cell`.
inline MultiPoly symbolic_polynomial(const Poset& P, ElementSet A, const CellSignature& cell) {
    if (!is_subset(P.minimal() | P.maximal(), A)) throw Error("InvalidCell", {"extremes not marked"});
    if (!is_ideal_chain_of(P, A, cell)) throw Error("InvalidCell", {"not an ideal chain of the marked subposet"});

    std::vector<std::string> vars;
    std::vector<std::size_t> var_of(P.size(), 0);
    for_each_element(A, [&](std::size_t a) {
        var_of[a] = vars.size();
        vars.push_back(P.label(a));
    });

    std::vector<ElementSet> classes;
    std::vector<std::size_t> rep;
    for (std::size_t j = 0; j < cell.length(); ++j) {
        classes.push_back(cell.block(j));
        rep.push_back(var_of[static_cast<std::size_t>(std::countr_zero(cell.block(j)))]);
    }

    // C(x_{j+1} - x_j - 1, d) per gap, memoised.
    std::map<std::pair<std::size_t, unsigned>, MultiPoly> factors;
    auto factor = [&](std::size_t j, unsigned d) -> const MultiPoly& {
        auto it = factors.find({j, d});
        if (it != factors.end()) return it->second;
        LinForm t;
        t.coeffs.assign(vars.size(), 0);
        t.coeffs[rep[j + 1]] += 1;
        t.coeffs[rep[j]] -= 1;
        t.constant = -1;
        return factors.emplace(std::make_pair(j, d), falling_binomial(t, d, vars)).first->second;
    };

    MultiPoly total(vars);
    for (const auto& [gaps, mult] : detail::gap_histogram(P, classes, nullptr)) {
        MultiPoly term = MultiPoly::constant(vars, Rational(static_cast<unsigned long>(mult)));
        for (std::size_t j = 0; j < gaps.size(); ++j) {
            if (gaps[j] > 0) term *= factor(j, gaps[j]);
        }
        total += term;
    }
    return total;
}

inline MultiPoly symbolic_polynomial(const Marking& m) {
    return symbolic_polynomial(m.poset, m.marked, cell_of(m));
}

namespace detail {

inline std::vector<Rational> marker_point(const Marking& m, long long sign) {
    std::vector<Rational> point;
    for_each_element(m.marked, [&](std::size_t a) { point.push_back(to_rational(sign * m.value(a))); });
    return point;
}

} // namespace detail

/// (-1)^dim times the cell polynomial evaluated at -lambda; equals the number of strict
/// extensions of lambda.
inline Integer reciprocity_count(const Marking& m) {
    const auto dim = dimension(m);
    const auto f = symbolic_polynomial(m);
    Rational v = f.eval(detail::marker_point(m, -1));
    if (dim % 2 == 1) v = -v;
    if (v.get_den() != 1) throw Error("NonIntegralEvaluation", {v.get_str()});
    return v.get_num();
}

/// Integer points of the marked chain polytope: phi >= 0, phi vanishing on A (forced by
/// the one-element chains {a}), and phi(C) <= lambda(b) - lambda(a) for every chain C in
/// every interval [a, b] between markers.
inline Integer count_chain_polytope_points(const Marking& m) {
    validate(m);
    const Poset& P = m.poset;
    const std::size_t n = P.size();
    const auto& order = P.linear_extension();
    std::vector<std::size_t> markers;
    for_each_element(m.marked, [&](std::size_t a) { markers.push_back(a); });
    const std::size_t k = markers.size();

    long long lo = std::numeric_limits<long long>::max(), hi = std::numeric_limits<long long>::min();
    for (auto a : markers) {
        lo = std::min(lo, m.value(a));
        hi = std::max(hi, m.value(a));
    }
    constexpr long long kNone = std::numeric_limits<long long>::min();
    // bound[i][p]: smallest lambda(b) - lambda(a_i) over markers b above p (a_i <= p).
    std::vector<std::vector<long long>> bound(k, std::vector<long long>(n, kNone));
    for (std::size_t i = 0; i < k; ++i) {
        for_each_element(P.up_set(markers[i]), [&](std::size_t p) {
            long long b = std::numeric_limits<long long>::max();
            for_each_element(P.up_set(p) & m.marked, [&](std::size_t q) { b = std::min(b, m.value(q) - m.value(markers[i])); });
            bound[i][p] = b;
        });
    }

    // heaviest[i][p]: maximal phi-weight of a chain from a_i up to p.
    std::vector<std::vector<long long>> heaviest(k, std::vector<long long>(n, kNone));
    std::vector<long long> phi(n, 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == n) {
            ++count;
            return;
        }
        const std::size_t p = order[t];
        const bool is_marker = contains(m.marked, p);
        const long long top = is_marker ? 0 : hi - lo;
        for (long long v = 0; v <= top; ++v) {
            phi[p] = v;
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i) {
                if (!P.leq(markers[i], p)) continue;
                long long best = 0;
                if (p != markers[i]) {
                    best = kNone;
                    for_each_element(P.lower_covers(p), [&](std::size_t q) {
                        if (P.leq(markers[i], q)) best = std::max(best, heaviest[i][q]);
                    });
                }
                heaviest[i][p] = best + v;
                ok = heaviest[i][p] <= bound[i][p];
            }
            if (!ok) break; // weights only grow with v
            self(self, t + 1);
        }
    };
    rec(rec, 0);
    return Integer(static_cast<unsigned long>(count));
}

/// lambda in the coordinates mu_0 = lambda(a_0), mu_i = lambda(a_i) - lambda(a_{i-1}) for
/// a chain A = {a_0 < ... < a_k}.
inline std::vector<long long> mu_coordinates(const Marking& m) {
    validate(m);
    if (!m.poset.is_chain(m.marked)) throw Error("NotAChain");
    std::vector<std::size_t> chain;
    for_each_element(m.marked, [&](std::size_t a) { chain.push_back(a); });
    std::sort(chain.begin(), chain.end(), [&](auto x, auto y) { return m.poset.less(x, y); });
    std::vector<long long> mu;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        mu.push_back(i == 0 ? m.value(chain[0]) : m.value(chain[i]) - m.value(chain[i - 1]));
    }
    return mu;
}

namespace detail {

inline std::vector<std::size_t> sorted_chain(const Poset& P, ElementSet A) {
    if (!P.is_chain(A)) throw Error("NotAChain");
    std::vector<std::size_t> chain;
    for_each_element(A, [&](std::size_t a) { chain.push_back(a); });
    std::sort(chain.begin(), chain.end(), [&](auto x, auto y) { return P.less(x, y); });
    return chain;
}

} // namespace detail

/// The cell polynomial rewritten in mu-coordinates (variables mu0..muk).
inline MultiPoly mu_polynomial(const Poset& P, ElementSet A, const CellSignature& cell) {
    const auto chain = detail::sorted_chain(P, A);
    for (std::size_t j = 0; j < cell.length(); ++j) {
        if (cardinality(cell.block(j)) != 1) throw Error("InvalidCell", {"mu-degrees need the strict cell"});
    }
    const auto f = symbolic_polynomial(P, A, cell);
    std::vector<std::string> mu_vars;
    for (std::size_t i = 0; i < chain.size(); ++i) mu_vars.push_back("mu" + std::to_string(i));
    // x_{a_i} = mu_0 + ... + mu_i; f's variables follow element index order.
    std::vector<MultiPoly> images;
    for_each_element(A, [&](std::size_t a) {
        const auto pos = static_cast<std::size_t>(std::find(chain.begin(), chain.end(), a) - chain.begin());
        MultiPoly x(mu_vars);
        for (std::size_t i = 0; i <= pos; ++i) x.add_term({{i, 1U}}, Rational(1));
        images.push_back(std::move(x));
    });
    return f.compose(images);
}

/// deg_{mu_i} of the strict-cell polynomial for i = 1..k.
inline std::vector<unsigned> mu_degrees(const Poset& P, ElementSet A, const CellSignature& cell) {
    const auto g = mu_polynomial(P, A, cell);
    std::vector<unsigned> out;
    for (std::size_t i = 1; i < g.variables().size(); ++i) out.push_back(g.degree_in(i));
    return out;
}

/// |P \ (P_{<= a_{i-1}} u P_{>= a_i})| for i = 1..k: the dimension of the fiber over the
/// i-th generator of the order cone of a chain.
inline std::vector<unsigned> mu_fiber_dimensions(const Poset& P, ElementSet A) {
    const auto chain = detail::sorted_chain(P, A);
    std::vector<unsigned> out;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        const ElementSet covered = P.down_set(chain[i - 1]) | P.up_set(chain[i]);
        out.push_back(static_cast<unsigned>(cardinality(P.all() & ~covered)));
    }
    return out;
}

/// Whether the affine space of extensions of lambda meets the face F_P(G) in its
/// relative interior.
inline bool check_compatible_face_partition(const Marking& m, const std::vector<Cover>& covers) {
    validate(m);
    const Poset& P = m.poset;
    if (!is_face_partition(P, covers)) throw Error("NotAFacePartition");
    const auto comps = face_components(P, covers);
    auto comp_of = [&](std::size_t p) {
        for (auto c : comps) if (contains(c, p)) return c;
        return ElementSet{0};
    };
    bool ok = true;
    for_each_element(m.marked, [&](std::size_t a) {
        for_each_element(m.marked, [&](std::size_t b) {
            const ElementSet ga = comp_of(a), gb = comp_of(b);
            if (m.value(a) < m.value(b)) {
                ok = ok && (P.down_closure(ga) & P.up_closure(gb)) == 0;
            } else if (m.value(a) == m.value(b) && P.comparable(a, b)) {
                ok = ok && ga == gb;
            }
        });
    });
    return ok;
}

} // namespace markedord
