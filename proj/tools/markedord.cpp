// Command-line front end: reads JSON documents, runs one computation, prints the result.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "markedord/markedord.hpp"

namespace {

using namespace markedord;
using io::json;

enum class Format { text, json };

struct Options {
    Format format = Format::text;
    std::string input;
    std::string graph;
    std::string coloring;
    bool brute = false;
    bool list = false;
    int n = 0;
    std::vector<long long> bottom;
    long long m = 0;
    std::uint64_t seed = 1;
    std::size_t count = 10;
    std::string kind = "marking";
};

json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

void print_integer(const Options& o, const Integer& v) {
    if (o.format == Format::json) std::cout << json{{"value", integer_json(v)}}.dump() << '\n';
    else std::cout << v.get_str() << '\n';
}

void print_polynomial(const Options& o, const MultiPoly& p) {
    if (o.format == Format::json) {
        json j = io::to_json(p);
        j["text"] = p.to_string();
        std::cout << j.dump() << '\n';
    } else {
        std::cout << p.to_string() << '\n';
    }
}

Marking load_marking(const std::string& path) {
    auto doc = io::marking_from_json(io::read_file(path));
    for (const auto& [a, b] : doc.removed_covers)
        std::cerr << "note: dropped transitive cover (" << a << "," << b << ")\n";
    return std::move(doc.marking);
}

json cell_json(const Poset& P, const CellSignature& cell) {
    json blocks = json::array();
    for (std::size_t j = 0; j < cell.length(); ++j) blocks.push_back(P.to_labels(cell.block(j)));
    return blocks;
}

std::string cell_text(const Poset& P, const CellSignature& cell) {
    std::string s;
    for (std::size_t j = 0; j < cell.length(); ++j) {
        if (j) s += " < ";
        s += "{";
        const auto labels = P.to_labels(cell.block(j));
        for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
        s += "}";
    }
    return s;
}

void run_mop(const std::string& verb, const Options& o) {
    const Marking m = load_marking(o.input);
    if (verb == "count") {
        validate(m);
        print_integer(o, o.brute ? count_extensions_bruteforce(m) : count_extensions(m));
    } else if (verb == "strict") {
        validate(m);
        print_integer(o, count_strict_extensions(m));
    } else if (verb == "poly") {
        print_polynomial(o, symbolic_polynomial(m));
    } else if (verb == "dim") {
        print_integer(o, Integer(static_cast<unsigned long>(dimension(m))));
    } else if (verb == "recip") {
        print_integer(o, reciprocity_count(m));
    } else if (verb == "chain-count") {
        validate(m);
        print_integer(o, count_chain_polytope_points(m));
    } else if (verb == "cells") {
        const auto current = cell_of(m);
        json out = json::array();
        for (const auto& cell : ideal_chains_in(m.poset, m.marked)) {
            const auto f = symbolic_polynomial(m.poset, m.marked, cell);
            const bool here = cell == current;
            if (o.format == Format::json) {
                out.push_back({{"cell", cell_json(m.poset, cell)}, {"polynomial", io::to_json(f)}, {"current", here}});
            } else {
                std::cout << (here ? "* " : "  ") << cell_text(m.poset, cell) << "  " << f.to_string() << '\n';
            }
        }
        if (o.format == Format::json) std::cout << json{{"cells", out}}.dump() << '\n';
    }
}

void run_mt(const std::string& verb, const Options& o) {
    if (verb == "count") {
        print_integer(o, mt::count_mt_direct(o.n, o.bottom));
    } else if (verb == "alpha") {
        print_integer(o, o.brute ? mt::count_mt_direct(o.n, o.bottom) : mt::alpha_via_moebius(o.n, o.bottom));
    } else if (verb == "alpha-poly") {
        print_polynomial(o, mt::alpha_polynomial(o.n));
    } else if (verb == "dmt-signed") {
        if (o.list) {
            mt::for_each_dmt(o.n, o.bottom, [&](const mt::Triangle& t) {
                if (o.format == Format::json) {
                    json j = io::to_json(t);
                    j["dd"] = mt::dd(t);
                    std::cout << j.dump() << '\n';
                } else {
                    std::string s;
                    for (const auto& row : t.rows) {
                        if (!s.empty()) s += " | ";
                        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + std::to_string(row[i]);
                    }
                    std::cout << s << "  dd=" << mt::dd(t) << '\n';
                }
            });
        }
        print_integer(o, mt::signed_dmt_sum(o.n, o.bottom));
    }
}

void run_chrom(const std::string& verb, const Options& o) {
    const auto g = io::graph_from_json(io::read_file(o.graph));
    const auto c = o.coloring.empty() ? coloring::make_coloring(g, 0, {})
                                      : io::coloring_from_json(g, io::read_file(o.coloring));
    if (verb == "poly") {
        const auto chi = coloring::chi_polynomial(g, c);
        print_polynomial(o, chi ? *chi : MultiPoly({"m"}));
    } else if (verb == "eval") {
        const auto chi = coloring::chi_polynomial(g, c);
        const Rational v = chi ? chi->eval(std::vector<Rational>{to_rational(o.m)}) : Rational(0);
        print_integer(o, v.get_num());
    } else if (verb == "pairs") {
        print_integer(o, coloring::reciprocity_pairs(g, c, o.m));
    } else if (verb == "acyclic") {
        print_integer(o, coloring::constrained_acyclic_count(g, c));
    } else if (verb == "count") {
        print_integer(o, o.brute ? coloring::count_proper_extensions(g, c, o.m) : coloring::orientation_sum_count(g, c, o.m));
    }
}

void run_corpus(const Options& o) {
    if (o.kind == "coloring") {
        for (const auto& inst : corpus::coloring_corpus(o.seed, o.count))
            std::cout << json{{"graph", io::to_json(inst.graph)}, {"coloring", io::to_json(inst.graph, inst.coloring)}}.dump() << '\n';
    } else {
        for (const auto& inst : corpus::marking_corpus(o.seed, o.count)) std::cout << io::to_json(inst.marking).dump() << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Marked order polytopes, monotone triangles and partial colorings"};
    app.require_subcommand(1);
    Options o;
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string group, verb;
    auto add_group = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->require_subcommand(1);
        sub->fallthrough();
        return sub;
    };
    auto add_verb = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        sub->callback([&, parent, name] {
            group = parent->get_name();
            verb = name;
        });
        return sub;
    };

    auto* mop = add_group("mop", "Marked order polytope counts for a marking file");
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"count", "Integer extensions of the marking"},
             {"strict", "Strict extensions of the marking"},
             {"poly", "Polynomial of the marking's cell"},
             {"dim", "Dimension of the marked order polytope"},
             {"recip", "Strict extensions via reciprocity"},
             {"chain-count", "Lattice points of the marked chain polytope"},
             {"cells", "All cells of the marked subposet with their polynomials"}}) {
        auto* v = add_verb(mop, name, help);
        v->add_option("-i,--input", o.input, "Marking JSON file")->required();
        if (name == "count") v->add_flag("--brute", o.brute, "Use direct enumeration");
    }

    auto* mtg = add_group("mt", "Monotone triangles with a prescribed bottom row");
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"count", "Direct count of monotone triangles"},
             {"alpha", "Count via the diamond inclusion-exclusion"},
             {"alpha-poly", "alpha(n; k) as a polynomial in k1..kn"},
             {"dmt-signed", "Signed count of decreasing monotone triangles"}}) {
        auto* v = add_verb(mtg, name, help);
        v->add_option("--n", o.n, "Triangle size")->required()->check(CLI::Range(1, 6));
        if (name != "alpha-poly") v->add_option("--bottom", o.bottom, "Bottom row")->required()->delimiter(',');
        if (name == "alpha") v->add_flag("--brute", o.brute, "Use direct enumeration");
        if (name == "dmt-signed") v->add_flag("--list", o.list, "Also print every triangle with its dd value");
    }

    auto* chrom = add_group("chrom", "Extensions of a partial coloring");
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"poly", "Extension polynomial in m"},
             {"eval", "Extension polynomial at m"},
             {"pairs", "Pairs of colorings and compatible acyclic orientations"},
             {"acyclic", "Constrained acyclic orientations"},
             {"count", "Proper extensions with m colors via orientations"}}) {
        auto* v = add_verb(chrom, name, help);
        v->add_option("-g,--graph", o.graph, "Graph JSON file")->required();
        v->add_option("-c,--coloring", o.coloring, "Partial coloring JSON file");
        if (name == "eval" || name == "pairs" || name == "count") v->add_option("--m", o.m, "Palette size")->required();
        if (name == "count") v->add_flag("--brute", o.brute, "Use direct enumeration");
    }

    auto* corpus = app.add_subcommand("corpus", "Print a seeded random test corpus as JSON lines");
    corpus->add_option("--seed", o.seed, "Random seed");
    corpus->add_option("--count", o.count, "Number of instances");
    corpus->add_option("--kind", o.kind, "marking or coloring")->check(CLI::IsMember({"marking", "coloring"}));
    corpus->fallthrough();
    corpus->callback([&] { group = "corpus"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    o.format = format == "json" ? Format::json : Format::text;

    try {
        if (group == "mop") run_mop(verb, o);
        else if (group == "mt") run_mt(verb, o);
        else if (group == "chrom") run_chrom(verb, o);
        else run_corpus(o);
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "ParseError(" << e.what() << ")\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
