#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "markedord/error.hpp"

namespace markedord {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer to_integer(long long v) { return Integer(static_cast<long>(v)); }
inline Rational to_rational(long long v) { return Rational(static_cast<long>(v)); }

/// Sparse multivariate polynomial with exact rational coefficients over a fixed, named
/// variable universe. Zero coefficients are never stored.
///
/// Terms iterate in the canonical order: total degree descending, then exponent vectors
/// ascending lexicographically in variable declaration order. With variables (x1, x3)
/// this prints `1*x3 - 1*x1 + 1`.
class MultiPoly {
public:
    /// (variable index, exponent > 0), sorted by variable index.
    using Monomial = std::vector<std::pair<std::size_t, unsigned>>;

    struct TermOrder {
        bool operator()(const Monomial& a, const Monomial& b) const {
            const unsigned da = degree(a), db = degree(b);
            if (da != db) return da > db;
            std::size_t i = 0, j = 0;
            while (i < a.size() || j < b.size()) {
                const std::size_t va = i < a.size() ? a[i].first : SIZE_MAX;
                const std::size_t vb = j < b.size() ? b[j].first : SIZE_MAX;
                if (va < vb) return false; // a has a positive exponent where b has none
                if (vb < va) return true;
                if (a[i].second != b[j].second) return a[i].second < b[j].second;
                ++i;
                ++j;
            }
            return false;
        }
        static unsigned degree(const Monomial& m) {
            unsigned d = 0;
            for (const auto& [v, e] : m) d += e;
            return d;
        }
    };

    using TermMap = std::map<Monomial, Rational, TermOrder>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

    static MultiPoly constant(std::vector<std::string> variables, const Rational& c) {
        MultiPoly p(std::move(variables));
        p.add_term({}, c);
        return p;
    }
    static MultiPoly variable(std::vector<std::string> variables, std::size_t index) {
        if (index >= variables.size()) throw Error("UnknownVariable", {std::to_string(index)});
        MultiPoly p(std::move(variables));
        p.add_term({{index, 1U}}, Rational(1));
        return p;
    }

    const std::vector<std::string>& variables() const noexcept { return vars_; }
    std::size_t variable_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw Error("UnknownVariable", {name});
        return static_cast<std::size_t>(it - vars_.begin());
    }

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds c * monomial; the monomial may be unsorted and contain zero exponents.
    void add_term(Monomial m, Rational c) {
        c.canonicalize();
        if (c == 0) return;
        std::sort(m.begin(), m.end());
        Monomial norm;
        for (const auto& [v, e] : m) {
            if (v >= vars_.size()) throw Error("UnknownVariable", {std::to_string(v)});
            if (e == 0) continue;
            if (!norm.empty() && norm.back().first == v) norm.back().second += e;
            else norm.emplace_back(v, e);
        }
        auto [it, inserted] = terms_.try_emplace(std::move(norm), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_)
            for (const auto& [var, e] : m) if (var == v) d = std::max(d, e);
        return d;
    }
    unsigned degree_in(const std::string& name) const { return degree_in(variable_index(name)); }

    /// Total degree; 0 for constants and for the zero polynomial.
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, TermOrder::degree(m));
        return d;
    }

    Rational eval(std::span<const Rational> point) const {
        if (point.size() != vars_.size()) throw Error("ArityMismatch", {std::to_string(point.size())});
        Rational sum = 0, term;
        mpq_class power;
        for (const auto& [m, c] : terms_) {
            term = c;
            for (const auto& [v, e] : m) {
                mpz_class num, den;
                mpz_pow_ui(num.get_mpz_t(), point[v].get_num_mpz_t(), e);
                mpz_pow_ui(den.get_mpz_t(), point[v].get_den_mpz_t(), e);
                term *= Rational(num, den);
            }
            sum += term;
        }
        sum.canonicalize();
        return sum;
    }

    /// Evaluation at a named point; every variable must be assigned and no unknown
    /// names may appear.
    Rational eval(const std::map<std::string, Rational>& point) const {
        std::vector<Rational> dense(vars_.size());
        std::vector<bool> seen(vars_.size(), false);
        for (const auto& [name, value] : point) {
            const auto i = variable_index(name);
            dense[i] = value;
            seen[i] = true;
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (!seen[i]) throw Error("UnknownVariable", {vars_[i]});
        }
        return eval(std::span<const Rational>(dense));
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
        check_universe(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_universe(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    MultiPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_universe(b);
        MultiPoly r(a.vars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                r.add_term(std::move(m), ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(vars_, 1), base = *this;
        while (e != 0) {
            if (e & 1U) r *= base;
            e >>= 1;
            if (e != 0) base *= base;
        }
        return r;
    }

    /// Substitutes images[i] for variable i. All images share one target universe.
    MultiPoly compose(const std::vector<MultiPoly>& images) const {
        if (images.size() != vars_.size()) throw Error("ArityMismatch", {std::to_string(images.size())});
        if (images.empty()) return *this;
        const auto& target = images.front().variables();
        for (const auto& im : images) {
            if (im.variables() != target) throw Error("VariableMismatch");
        }
        MultiPoly r(target);
        for (const auto& [m, c] : terms_) {
            MultiPoly t = constant(target, c);
            for (const auto& [v, e] : m) t *= images[v].pow(e);
            r += t;
        }
        return r;
    }

    /// Same polynomial over a renamed universe of equal size.
    MultiPoly renamed(std::vector<std::string> names) const {
        if (names.size() != vars_.size()) throw Error("ArityMismatch", {std::to_string(names.size())});
        MultiPoly r = *this;
        r.vars_ = std::move(names);
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const bool negative = c < 0;
            if (first) out += negative ? "-" : "";
            else out += negative ? " - " : " + ";
            first = false;
            out += Rational(abs(c)).get_str();
            for (const auto& [v, e] : m) {
                out += "*" + vars_[v];
                if (e > 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

    bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

private:
    void check_universe(const MultiPoly& o) const {
        if (vars_ != o.vars_) throw Error("VariableMismatch");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Integer affine form sum_i coeffs[i] * x_i + constant.
struct LinForm {
    std::vector<long long> coeffs;
    long long constant = 0;

    MultiPoly to_poly(const std::vector<std::string>& vars) const {
        if (coeffs.size() > vars.size()) throw Error("UnknownVariable", {std::to_string(coeffs.size() - 1)});
        MultiPoly p = MultiPoly::constant(vars, to_rational(constant));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] != 0) p.add_term({{i, 1U}}, to_rational(coeffs[i]));
        }
        return p;
    }
};

/// C(t + d, d) = (t+1)(t+2)...(t+d) / d! as a polynomial in the variables of t.
inline MultiPoly rising_binomial(const LinForm& t, unsigned d, const std::vector<std::string>& vars) {
    const MultiPoly base = t.to_poly(vars);
    MultiPoly r = MultiPoly::constant(vars, 1);
    mpz_class fact = 1;
    for (unsigned i = 1; i <= d; ++i) {
        r *= base + MultiPoly::constant(vars, Rational(i));
        fact *= i;
    }
    return r * Rational(mpz_class(1), fact);
}

/// C(t, d) = t(t-1)...(t-d+1) / d!, i.e. rising_binomial(t - d, d).
inline MultiPoly falling_binomial(const LinForm& t, unsigned d, const std::vector<std::string>& vars) {
    LinForm shifted = t;
    shifted.constant -= static_cast<long long>(d);
    return rising_binomial(shifted, d, vars);
}

/// Unique interpolant of degree < samples.size() through (x, y) pairs, in variable `var`.
inline MultiPoly interpolate_univariate(const std::vector<std::pair<Integer, Rational>>& samples,
                                        const std::string& var = "x") {
    const std::vector<std::string> vars{var};
    const std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (samples[i].first == samples[j].first) throw Error("DuplicateAbscissa", {samples[i].first.get_str()});

    // Newton divided differences.
    std::vector<Rational> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = samples[i].second;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Rational(samples[i].first - samples[i - level].first);
            dd[i].canonicalize();
        }
    }
    const MultiPoly x = MultiPoly::variable(vars, 0);
    MultiPoly result(vars), basis = MultiPoly::constant(vars, 1);
    for (std::size_t i = 0; i < n; ++i) {
        result += basis * dd[i];
        basis *= x - MultiPoly::constant(vars, Rational(samples[i].first));
    }
    return result;
}

} // namespace markedord
