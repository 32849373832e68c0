#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "markedord/error.hpp"
#include "markedord/marked_order.hpp"
#include "markedord/parallel.hpp"
#include "markedord/polynomial.hpp"
#include "markedord/poset.hpp"

namespace markedord::mt {

/// Position (i, j) with 1 <= j <= i <= n; row i counted from the top, row n is the
/// marked bottom row.
struct GTIndex {
    int i = 1;
    int j = 1;
    bool operator==(const GTIndex&) const = default;
    auto operator<=>(const GTIndex&) const = default;
};

inline std::size_t gt_element(int i, int j) {
    return static_cast<std::size_t>(i * (i - 1) / 2 + (j - 1));
}

inline std::string gt_label(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }

/// Gelfand-Tsetlin poset: (i,j) <= (k,l) iff k - i <= l - j and j <= l. Elements are listed
/// row by row from the top.
inline Poset gt_poset(int n) {
    if (n < 1) throw Error("InvalidOrder", {std::to_string(n)});
    std::vector<std::string> labels;
    std::vector<Cover> rel;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= i; ++j) {
            labels.push_back(gt_label(i, j));
            if (j < i) rel.emplace_back(gt_element(i, j), gt_element(i - 1, j));
            if (i < n) rel.emplace_back(gt_element(i, j), gt_element(i + 1, j + 1));
        }
    }
    return Poset::from_relations(std::move(labels), rel);
}

/// The bottom row {(n,1), ..., (n,n)}.
inline ElementSet gt_markers(int n) {
    ElementSet s = 0;
    for (int j = 1; j <= n; ++j) s |= singleton(gt_element(n, j));
    return s;
}

inline void require_increasing(int n, const std::vector<long long>& k) {
    if (static_cast<int>(k.size()) != n) throw Error("ArityMismatch", {std::to_string(k.size())});
    for (std::size_t j = 1; j < k.size(); ++j)
        if (k[j - 1] > k[j]) throw Error("NotIncreasing", {std::to_string(j), std::to_string(j + 1)});
}

inline void require_decreasing(int n, const std::vector<long long>& k) {
    if (static_cast<int>(k.size()) != n) throw Error("ArityMismatch", {std::to_string(k.size())});
    for (std::size_t j = 1; j < k.size(); ++j)
        if (k[j - 1] < k[j]) throw Error("NotDecreasing", {std::to_string(j), std::to_string(j + 1)});
}

/// Marking of GT_n by the bottom row k.
inline Marking gt_marking(int n, const std::vector<long long>& k) {
    require_increasing(n, k);
    Marking m;
    m.poset = gt_poset(n);
    m.marked = gt_markers(n);
    m.values.assign(m.poset.size(), 0);
    for (int j = 1; j <= n; ++j) m.values[gt_element(n, j)] = k[static_cast<std::size_t>(j - 1)];
    return m;
}

/// alpha(n; k): monotone triangles with bottom row k, counted row by row upwards.
inline Integer count_mt_direct(int n, const std::vector<long long>& k) {
    require_increasing(n, k);
    std::map<std::vector<long long>, Integer> memo;
    auto above = [&](auto&& self, const std::vector<long long>& row) -> Integer {
        if (row.size() <= 1) return 1;
        auto it = memo.find(row);
        if (it != memo.end()) return it->second;
        Integer total = 0;
        std::vector<long long> next(row.size() - 1);
        // row[j] <= next[j] <= row[j+1], strictly increasing along the new row.
        auto fill = [&](auto&& fill_self, std::size_t j) -> void {
            if (j == next.size()) {
                total += self(self, next);
                return;
            }
            long long lo = row[j];
            if (j > 0) lo = std::max(lo, next[j - 1] + 1);
            for (long long v = lo; v <= row[j + 1]; ++v) {
                next[j] = v;
                fill_self(fill_self, j + 1);
            }
        };
        fill(fill, 0);
        memo.emplace(row, total);
        return total;
    };
    return above(above, k);
}

/// Subset of bad_n = {(i,j) : 1 <= j < i < n}; each member stands for the diamond
/// forcing a_{i,j} = a_{i,j+1}.
struct DiamondSet {
    int n = 1;
    std::vector<GTIndex> cells;
};

inline std::vector<GTIndex> bad_positions(int n) {
    std::vector<GTIndex> out;
    for (int i = 2; i < n; ++i)
        for (int j = 1; j < i; ++j) out.push_back({i, j});
    return out;
}

/// Diamond sets without horizontally adjacent members; these are exactly the closed
/// diamond posets with nonzero Moebius value (-1)^{|I|}. Listed by ascending bitmask
/// over bad_positions(n).
inline std::vector<DiamondSet> enumerate_qess(int n) {
    const auto bad = bad_positions(n);
    if (bad.size() >= 63) throw Error("TooLarge", {std::to_string(n)});
    std::vector<DiamondSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bad.size()); ++mask) {
        DiamondSet d{n, {}};
        for (std::size_t b = 0; b < bad.size(); ++b)
            if ((mask >> b) & 1U) d.cells.push_back(bad[b]);
        bool essential = true;
        for (const auto& c : d.cells)
            for (const auto& e : d.cells) essential = essential && !(c.i == e.i && e.j == c.j + 1);
        if (essential) out.push_back(std::move(d));
    }
    return out;
}

/// Hasse diagram of the union of the diamonds G_{ij}:
/// (i,j) < (i-1,j) < (i,j+1) and (i,j) < (i+1,j+1) < (i,j+1).
inline std::vector<Cover> diamond_covers(const DiamondSet& d) {
    std::vector<Cover> out;
    auto add = [&](Cover c) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    };
    for (const auto& [i, j] : d.cells) {
        add({gt_element(i, j), gt_element(i - 1, j)});
        add({gt_element(i - 1, j), gt_element(i, j + 1)});
        add({gt_element(i, j), gt_element(i + 1, j + 1)});
        add({gt_element(i + 1, j + 1), gt_element(i, j + 1)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Omega of GT_n restricted to maps constant on the components of `covers`. Components
/// joining markers of different values give an empty face.
inline Integer face_count(const Poset& gt, int n, const std::vector<Cover>& covers, const std::vector<long long>& k) {
    const auto closed = close_face_partition(gt, covers);
    const auto q = quotient(gt, closed);
    std::map<std::string, long long> values;
    for (int j = 1; j <= n; ++j) {
        const auto& cls = q.poset.label(q.map[gt_element(n, j)]);
        const long long v = k[static_cast<std::size_t>(j - 1)];
        auto [it, inserted] = values.emplace(cls, v);
        if (!inserted && it->second != v) return 0;
    }
    const auto m = make_marking(q.poset, values);
    if (!is_valid(m)) return 0;
    return count_extensions(m);
}

} // namespace detail

/// alpha(n; k) = sum over essential diamond sets I of (-1)^{|I|} Omega_{GT_n/G, A/G}(k).
/// Equal neighbours k_j = k_{j+1} are merged with (n-1, j) before quotienting.
inline Integer alpha_via_moebius(int n, const std::vector<long long>& k) {
    require_increasing(n, k);
    const Poset gt = gt_poset(n);
    const auto qess = enumerate_qess(n);
    return parallel_sum<Integer>(qess.size(), [&](std::size_t idx) -> Integer {
        auto covers = diamond_covers(qess[idx]);
        for (int j = 1; j < n; ++j) {
            if (k[static_cast<std::size_t>(j - 1)] == k[static_cast<std::size_t>(j)]) {
                covers.emplace_back(gt_element(n, j), gt_element(n - 1, j));
                covers.emplace_back(gt_element(n - 1, j), gt_element(n, j + 1));
            }
        }
        std::sort(covers.begin(), covers.end());
        covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
        Integer c = detail::face_count(gt, n, covers, k);
        return qess[idx].cells.size() % 2 == 0 ? c : Integer(-c);
    });
}

/// alpha(n; k) as a polynomial in k1..kn: the signed sum of the strict-cell polynomials of
/// the quotients GT_n / G over essential diamond sets.
inline MultiPoly alpha_polynomial(int n) {
    std::vector<std::string> kvars;
    for (int j = 1; j <= n; ++j) kvars.push_back("k" + std::to_string(j));
    const Poset gt = gt_poset(n);
    MultiPoly total(kvars);
    for (const auto& d : enumerate_qess(n)) {
        const auto q = quotient(gt, diamond_covers(d));
        // Class of each bottom-row marker; a shared class would force k_j = k_l.
        std::vector<std::size_t> cls;
        ElementSet A = 0;
        for (int j = 1; j <= n; ++j) {
            cls.push_back(q.map[gt_element(n, j)]);
            A |= singleton(cls.back());
        }
        if (cardinality(A) != n) continue;
        CellSignature cell;
        ElementSet acc = 0;
        for (auto c : cls) cell.ideals.push_back(acc |= singleton(c));
        const auto f = symbolic_polynomial(q.poset, A, cell);
        std::vector<MultiPoly> images;
        for_each_element(A, [&](std::size_t c) {
            const auto j = static_cast<std::size_t>(std::find(cls.begin(), cls.end(), c) - cls.begin());
            images.push_back(MultiPoly::variable(kvars, j));
        });
        auto g = f.compose(images);
        if (d.cells.size() % 2 == 1) g = -g;
        total += g;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Decreasing monotone triangles

/// Triangular integer array; rows listed top to bottom, row i has i entries.
struct Triangle {
    int n = 0;
    std::vector<std::vector<long long>> rows;

    long long at(int i, int j) const {
        return rows.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1));
    }
    bool operator==(const Triangle&) const = default;
};

namespace detail {

inline bool has_triple(const std::vector<long long>& row) {
    std::map<long long, int> seen;
    for (auto v : row)
        if (++seen[v] >= 3) return true;
    return false;
}

/// Some integer occurs exactly once in each of the two rows.
inline bool shares_singleton(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::map<long long, int> ca, cb;
    for (auto v : a) ++ca[v];
    for (auto v : b) ++cb[v];
    for (const auto& [v, c] : ca)
        if (c == 1 && cb.count(v) && cb[v] == 1) return true;
    return false;
}

} // namespace detail

/// Each entry lies between its two neighbours in the row below, no row holds a value three times,
/// and no value occurs exactly once in two consecutive rows.
inline bool is_dmt(const Triangle& t) {
    if (t.n < 1 || static_cast<int>(t.rows.size()) != t.n) return false;
    for (int i = 1; i <= t.n; ++i)
        if (static_cast<int>(t.rows[static_cast<std::size_t>(i - 1)].size()) != i) return false;
    for (int i = 1; i <= t.n; ++i) {
        for (int j = 1; j <= i; ++j) {
            if (j < i && t.at(i, j) < t.at(i - 1, j)) return false;          // at least the entry above
            if (i < t.n && t.at(i, j) < t.at(i + 1, j + 1)) return false;    // at least the entry below right
        }
        if (detail::has_triple(t.rows[static_cast<std::size_t>(i - 1)])) return false; // no triples
        if (i < t.n && detail::shares_singleton(t.rows[static_cast<std::size_t>(i - 1)], t.rows[static_cast<std::size_t>(i)]))
            return false; // no shared singletons
    }
    return true;
}

/// Streams W_n(k), the decreasing monotone triangles with bottom row k, in lexicographic
/// order of the rows read bottom-up.
template <class F>
void for_each_dmt(int n, const std::vector<long long>& k, F&& f) {
    require_decreasing(n, k);
    if (detail::has_triple(k)) return;
    std::vector<std::vector<long long>> bottom_up{k};
    auto rec = [&](auto&& self) -> void {
        const auto row = bottom_up.back();
        if (row.size() == 1) {
            Triangle t{n, {bottom_up.rbegin(), bottom_up.rend()}};
            f(static_cast<const Triangle&>(t));
            return;
        }
        std::vector<long long> next(row.size() - 1);
        std::map<long long, int> counts;
        // row[j+1] <= next[j] <= row[j]; at most two equal entries.
        auto fill = [&](auto&& fill_self, std::size_t j) -> void {
            if (j == next.size()) {
                if (detail::shares_singleton(next, row)) return;
                bottom_up.push_back(next);
                self(self);
                bottom_up.pop_back();
                return;
            }
            for (long long v = row[j + 1]; v <= row[j]; ++v) {
                if (counts[v] == 2) continue;
                ++counts[v];
                next[j] = v;
                fill_self(fill_self, j + 1);
                --counts[v];
            }
        };
        fill(fill, 0);
    };
    rec(rec);
}

inline std::vector<Triangle> enumerate_dmt(int n, const std::vector<long long>& k) {
    std::vector<Triangle> out;
    for_each_dmt(n, k, [&](const Triangle& t) { out.push_back(t); });
    return out;
}

/// Adjacent equal pairs that sit in the last row or reappear directly beneath.
inline unsigned dd(const Triangle& t) {
    if (!is_dmt(t)) throw Error("NotADMT");
    unsigned count = 0;
    for (int i = 1; i <= t.n; ++i) {
        for (int j = 1; j < i; ++j) {
            const long long x = t.at(i, j);
            if (x != t.at(i, j + 1)) continue;
            // Interlacing forces b_{i+1,j+1} = x beneath the pair; the row below repeats the
            // pair iff one of its neighbours also equals x.
            if (i == t.n || t.at(i + 1, j) == x || t.at(i + 1, j + 2) == x) ++count;
        }
    }
    return count;
}

/// (-1)^{C(n,2)} * sum over W_n(k) of (-1)^{dd(b)}.
inline Integer signed_dmt_sum(int n, const std::vector<long long>& k) {
    long long sum = 0;
    for_each_dmt(n, k, [&](const Triangle& t) { sum += dd(t) % 2 == 0 ? 1 : -1; });
    if ((n * (n - 1) / 2) % 2 == 1) sum = -sum;
    return Integer(static_cast<long>(sum));
}

} // namespace markedord::mt
