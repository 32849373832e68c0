#pragma once

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "markedord/coloring.hpp"
#include "markedord/error.hpp"
#include "markedord/marked_order.hpp"
#include "markedord/monotone_triangles.hpp"
#include "markedord/polynomial.hpp"
#include "markedord/poset.hpp"

namespace markedord::io {

using nlohmann::json;

namespace detail {

inline void expect(bool ok, const std::string& what) {
    if (!ok) throw ParseError(what);
}

inline const json& field(const json& j, const char* key) {
    expect(j.is_object(), std::string("expected an object with '") + key + "'");
    auto it = j.find(key);
    expect(it != j.end(), std::string("missing '") + key + "'");
    return *it;
}

inline std::vector<std::string> string_list(const json& j, const char* what) {
    expect(j.is_array(), std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        expect(e.is_string(), std::string(what) + " entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> pair_list(const json& j, const char* what) {
    expect(j.is_array(), std::string(what) + " must be an array");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : j) {
        expect(e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string(),
               std::string(what) + " entries must be pairs of strings");
        out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return out;
}

inline long long integer(const json& j, const std::string& what) {
    expect(j.is_number_integer(), what + " must be an integer");
    return j.get<long long>();
}

inline Rational rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw ParseError("bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace detail

inline json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

// Poset: {"elements": [...], "covers": [[a, b], ...]}

inline BuildResult poset_from_json(const json& j) {
    auto labels = detail::string_list(detail::field(j, "elements"), "elements");
    auto covers = j.contains("covers") ? detail::pair_list(j["covers"], "covers")
                                       : std::vector<std::pair<std::string, std::string>>{};
    return build_poset(std::move(labels), covers);
}

inline json to_json(const Poset& P) {
    json covers = json::array();
    for (auto [a, b] : P.covers()) covers.push_back({P.label(a), P.label(b)});
    return {{"elements", P.labels()}, {"covers", covers}};
}

// Marking: {"poset": ..., "marked": [...], "values": {label: int}}

struct MarkingDocument {
    Marking marking;
    std::vector<std::pair<std::string, std::string>> removed_covers;
};

inline MarkingDocument marking_from_json(const json& j) {
    auto built = poset_from_json(detail::field(j, "poset"));
    const auto& values = detail::field(j, "values");
    detail::expect(values.is_object(), "values must be an object");
    std::map<std::string, long long> vals;
    for (const auto& [label, v] : values.items()) vals[label] = detail::integer(v, "value of " + label);
    if (j.contains("marked")) {
        const auto marked = detail::string_list(j["marked"], "marked");
        detail::expect(marked.size() == vals.size(), "marked and values disagree");
        for (const auto& a : marked) detail::expect(vals.count(a) == 1, "no value for marked element " + a);
    }
    return {make_marking(std::move(built.poset), vals), std::move(built.removed)};
}

inline json to_json(const Marking& m) {
    json values = json::object();
    for_each_element(m.marked, [&](std::size_t a) { values[m.poset.label(a)] = m.value(a); });
    return {{"poset", to_json(m.poset)}, {"marked", m.marked_labels()}, {"values", values}};
}

// Polynomial: {"variables": [...], "terms": [{"exps": {var: e}, "coeff": "p/q"}, ...]}

inline json to_json(const MultiPoly& p) {
    json terms = json::array();
    for (const auto& [mono, c] : p.terms()) {
        json exps = json::object();
        for (const auto& [v, e] : mono) exps[p.variables()[v]] = e;
        terms.push_back({{"exps", exps}, {"coeff", c.get_str()}});
    }
    return {{"variables", p.variables()}, {"terms", terms}};
}

inline MultiPoly polynomial_from_json(const json& j) {
    const auto& terms = detail::field(j, "terms");
    detail::expect(terms.is_array(), "terms must be an array");
    std::vector<std::string> vars;
    if (j.contains("variables")) {
        vars = detail::string_list(j["variables"], "variables");
    } else {
        for (const auto& t : terms)
            for (const auto& [name, e] : detail::field(t, "exps").items())
                if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
    }
    MultiPoly p(vars);
    for (const auto& t : terms) {
        const auto& exps = detail::field(t, "exps");
        detail::expect(exps.is_object(), "exps must be an object");
        MultiPoly::Monomial mono;
        for (const auto& [name, e] : exps.items()) {
            const long long ex = detail::integer(e, "exponent of " + name);
            detail::expect(ex >= 0, "negative exponent for " + name);
            auto it = std::find(vars.begin(), vars.end(), name);
            detail::expect(it != vars.end(), "unknown variable " + name);
            mono.emplace_back(static_cast<std::size_t>(it - vars.begin()), static_cast<unsigned>(ex));
        }
        const auto& c = detail::field(t, "coeff");
        Rational coeff = c.is_string() ? detail::rational(c.get<std::string>())
                                       : to_rational(detail::integer(c, "coeff"));
        p.add_term(std::move(mono), coeff);
    }
    return p;
}

// Triangle: {"n": n, "rows": [[...], ...]} listing rows top to bottom.

inline json to_json(const mt::Triangle& t) { return {{"n", t.n}, {"rows", t.rows}}; }

inline mt::Triangle triangle_from_json(const json& j) {
    const long long n = detail::integer(detail::field(j, "n"), "n");
    detail::expect(n >= 1 && n <= 10, "n out of range");
    const auto& rows = detail::field(j, "rows");
    detail::expect(rows.is_array() && rows.size() == static_cast<std::size_t>(n), "rows must have n entries");
    mt::Triangle t;
    t.n = static_cast<int>(n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        detail::expect(rows[i].is_array() && rows[i].size() == i + 1, "row " + std::to_string(i + 1) + " has wrong length");
        std::vector<long long> row;
        for (const auto& v : rows[i]) row.push_back(detail::integer(v, "triangle entry"));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Graph: {"vertices": [...], "edges": [[u, v], ...]}; coloring: {"k": k, "colors": {v: c}}

inline coloring::Graph graph_from_json(const json& j) {
    auto vertices = detail::string_list(detail::field(j, "vertices"), "vertices");
    auto edges = j.contains("edges") ? detail::pair_list(j["edges"], "edges")
                                     : std::vector<std::pair<std::string, std::string>>{};
    return coloring::make_graph(std::move(vertices), edges);
}

inline json to_json(const coloring::Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges) edges.push_back({g.vertices[u], g.vertices[v]});
    return {{"vertices", g.vertices}, {"edges", edges}};
}

inline coloring::PartialColoring coloring_from_json(const coloring::Graph& g, const json& j) {
    const long long k = detail::integer(detail::field(j, "k"), "k");
    detail::expect(k >= 0, "k must be nonnegative");
    std::map<std::string, unsigned> colors;
    if (j.contains("colors")) {
        detail::expect(j["colors"].is_object(), "colors must be an object");
        for (const auto& [label, c] : j["colors"].items()) {
            const long long v = detail::integer(c, "color of " + label);
            if (v < 1 || v > k) throw Error("ColorOutOfRange", {label, std::to_string(v)});
            colors[label] = static_cast<unsigned>(v);
        }
    }
    return coloring::make_coloring(g, static_cast<unsigned>(k), colors);
}

inline json to_json(const coloring::Graph& g, const coloring::PartialColoring& c) {
    json colors = json::object();
    for (std::size_t v = 0; v < g.size(); ++v)
        if (c.colors[v] != 0) colors[g.vertices[v]] = c.colors[v];
    return {{"k", c.palette}, {"colors", colors}};
}

} // namespace markedord::io
