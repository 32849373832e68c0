#pragma once

// Reference implementations used only by the tests. They work from raw relation lists
// and plain nested loops so that they share no code paths with the library.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;

/// Reflexive-transitive closure of a relation list by Warshall's algorithm.
inline Matrix closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel) {
    Matrix le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (auto [a, b] : rel) le[a][b] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (le[i][k] && le[k][j]) le[i][j] = true;
    return le;
}

/// Cover pairs of a closed order: i < j with nothing strictly between.
inline std::set<std::pair<std::size_t, std::size_t>> covers(const Matrix& le) {
    const std::size_t n = le.size();
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !le[i][j]) continue;
            bool between = false;
            for (std::size_t k = 0; k < n; ++k)
                if (k != i && k != j && le[i][k] && le[k][j]) between = true;
            if (!between) out.emplace(i, j);
        }
    return out;
}

/// Number of linear extensions by recursion over remaining minimal elements.
inline std::uint64_t linear_extensions(const Matrix& le) {
    const std::size_t n = le.size();
    std::map<std::uint64_t, std::uint64_t> memo;
    std::function<std::uint64_t(std::uint64_t)> rec = [&](std::uint64_t used) -> std::uint64_t {
        if (used == (std::uint64_t{1} << n) - 1) return 1;
        if (auto it = memo.find(used); it != memo.end()) return it->second;
        std::uint64_t total = 0;
        for (std::size_t p = 0; p < n; ++p) {
            if (used >> p & 1U) continue;
            bool minimal = true;
            for (std::size_t q = 0; q < n; ++q)
                if (q != p && le[q][p] && !(used >> q & 1U)) minimal = false;
            if (minimal) total += rec(used | (std::uint64_t{1} << p));
        }
        return memo[used] = total;
    };
    return rec(0);
}

/// Every subset that is downward closed, including the empty set.
inline std::vector<std::uint64_t> ideals(const Matrix& le) {
    const std::size_t n = le.size();
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool closed = true;
        for (std::size_t q = 0; q < n && closed; ++q)
            if (s >> q & 1U)
                for (std::size_t p = 0; p < n; ++p)
                    if (le[p][q] && !(s >> p & 1U)) closed = false;
        if (closed) out.push_back(s);
    }
    return out;
}

/// Chains of nonempty ideals ending at the full set, counted through the ideal lattice.
inline std::uint64_t ideal_chain_count(const Matrix& le) {
    const auto all_ideals = ideals(le);
    const std::uint64_t full = (std::uint64_t{1} << le.size()) - 1;
    std::map<std::uint64_t, std::uint64_t> memo;
    std::function<std::uint64_t(std::uint64_t)> from = [&](std::uint64_t I) -> std::uint64_t {
        if (I == full) return 1;
        if (auto it = memo.find(I); it != memo.end()) return it->second;
        std::uint64_t total = 0;
        for (auto J : all_ideals)
            if (J != I && (I & ~J) == 0) total += from(J);
        return memo[I] = total;
    };
    return le.empty() ? 0 : from(0);
}

/// Integer points of { phi : P -> [lo, hi] order preserving, phi = lambda on marked }.
/// `strict` additionally forbids phi(p) = phi(q) for p < q unless markers a <= p < q <= b
/// with lambda(a) = lambda(b) exist.
inline std::uint64_t count_extensions(const Matrix& le, const std::vector<bool>& marked,
                                      const std::vector<long long>& lambda, long long lo, long long hi,
                                      bool strict = false) {
    const std::size_t n = le.size();
    std::vector<long long> phi(n, 0);
    auto pinned = [&](std::size_t p, std::size_t q) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (marked[a] && marked[b] && le[a][p] && le[q][b] && lambda[a] == lambda[b]) return true;
        return false;
    };
    std::uint64_t count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t p) {
        if (p == n) {
            ++count;
            return;
        }
        const long long first = marked[p] ? lambda[p] : lo;
        const long long last = marked[p] ? lambda[p] : hi;
        for (long long v = first; v <= last; ++v) {
            bool ok = true;
            for (std::size_t q = 0; q < p && ok; ++q) {
                if (le[q][p] && phi[q] > v) ok = false;
                if (le[p][q] && v > phi[q]) ok = false;
                if (strict && ok && v == phi[q]) {
                    if (le[q][p] && !pinned(q, p)) ok = false;
                    if (le[p][q] && !pinned(p, q)) ok = false;
                }
            }
            if (!ok) continue;
            phi[p] = v;
            rec(p + 1);
        }
    };
    rec(0);
    return count;
}

/// Chromatic polynomial coefficients (index = power of m) by deletion-contraction on an
/// adjacency matrix.
inline std::vector<mpz_class> chromatic(std::vector<std::vector<bool>> adj) {
    const std::size_t n = adj.size();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            if (!adj[u][v]) continue;
            auto del = adj;
            del[u][v] = del[v][u] = false;
            // Contract v into u, then drop v.
            std::vector<std::vector<bool>> con(n - 1, std::vector<bool>(n - 1, false));
            auto idx = [&](std::size_t w) { return w < v ? w : w - 1; };
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    if (a == v || b == v || !adj[a][b]) continue;
                    con[idx(a)][idx(b)] = true;
                }
            for (std::size_t w = 0; w < n; ++w) {
                if (w == v || w == u || !adj[v][w]) continue;
                con[idx(u)][idx(w)] = con[idx(w)][idx(u)] = true;
            }
            auto pd = chromatic(del), pc = chromatic(con);
            for (std::size_t i = 0; i < pc.size(); ++i) pd[i] -= pc[i];
            return pd;
        }
    std::vector<mpz_class> edgeless(n + 1, 0);
    edgeless[n] = 1;
    return edgeless;
}

inline mpz_class binomial(long long n, long long k) {
    if (k < 0 || n < k) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// Rows top to bottom.
using Rows = std::vector<std::vector<long long>>;

/// Monotone triangles with bottom row k: every row above is chosen freely from [k1, kn]
/// and then filtered by interlacing and strict row increase.
inline std::uint64_t monotone_triangles(const std::vector<long long>& k) {
    const std::size_t n = k.size();
    if (n == 0) return 0;
    for (std::size_t j = 1; j < n; ++j)
        if (k[j - 1] > k[j]) return 0;
    std::uint64_t count = 0;
    std::function<void(const std::vector<long long>&)> up = [&](const std::vector<long long>& below) {
        if (below.size() == 1) {
            ++count;
            return;
        }
        std::vector<long long> row(below.size() - 1);
        std::function<void(std::size_t)> fill = [&](std::size_t j) {
            if (j == row.size()) {
                up(row);
                return;
            }
            for (long long v = k.front(); v <= k.back(); ++v) {
                if (v < below[j] || v > below[j + 1]) continue; // interlacing
                if (j > 0 && row[j - 1] >= v) continue;          // strictly increasing row
                row[j] = v;
                fill(j + 1);
            }
        };
        fill(0);
    };
    up(k);
    return count;
}

inline bool is_monotone_triangle(const Rows& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != i + 1) return false;
        if (i + 1 == n) continue;
        for (std::size_t j = 0; j + 1 < a[i].size(); ++j)
            if (a[i][j] >= a[i][j + 1]) return false;
        for (std::size_t j = 0; j <= i; ++j)
            if (a[i + 1][j] > a[i][j] || a[i][j] > a[i + 1][j + 1]) return false;
    }
    return true;
}

/// Duplicate-descendants: adjacent equal pairs in the last row, or whose pair appears
/// adjacently in the row below.
inline unsigned duplicate_descendants(const Rows& b) {
    unsigned dd = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j + 1 < b[i].size(); ++j) {
            if (b[i][j] != b[i][j + 1]) continue;
            if (i + 1 == b.size()) {
                ++dd;
                continue;
            }
            for (std::size_t t = 0; t + 1 < b[i + 1].size(); ++t)
                if (b[i + 1][t] == b[i][j] && b[i + 1][t + 1] == b[i][j]) {
                    ++dd;
                    break;
                }
        }
    return dd;
}

inline bool is_dmt(const Rows& b) {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (b[i].size() != i + 1) return false;
        std::map<long long, int> here, below;
        for (auto v : b[i]) ++here[v];
        for (const auto& [v, c] : here)
            if (c >= 3) return false;
        if (i + 1 == n) continue;
        for (std::size_t j = 0; j <= i; ++j)
            if (b[i + 1][j] < b[i][j] || b[i][j] < b[i + 1][j + 1]) return false;
        for (auto v : b[i + 1]) ++below[v];
        for (const auto& [v, c] : here)
            if (c == 1 && below.count(v) && below[v] == 1) return false;
    }
    return true;
}

/// Signed DMT count by exhaustive generation of all triangles over [kn, k1].
inline long long signed_dmt(const std::vector<long long>& k) {
    const std::size_t n = k.size();
    long long sum = 0;
    Rows rows(n);
    rows[n - 1] = k;
    std::function<void(std::size_t)> level = [&](std::size_t i) {
        if (i == 0) {
            if (is_dmt(rows)) sum += duplicate_descendants(rows) % 2 == 0 ? 1 : -1;
            return;
        }
        std::vector<long long> row(i);
        std::function<void(std::size_t)> fill = [&](std::size_t j) {
            if (j == i) {
                rows[i - 1] = row;
                level(i - 1);
                return;
            }
            for (long long v = k.back(); v <= k.front(); ++v) {
                if (v > rows[i][j] || v < rows[i][j + 1]) continue;
                row[j] = v;
                fill(j + 1);
            }
        };
        fill(0);
    };
    level(n - 1);
    return (n * (n - 1) / 2) % 2 == 1 ? -sum : sum;
}

} // namespace oracle
