#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "colour_set.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "subgraph.hpp"

namespace listcol {

// Reduction from positive not-all-equal satisfiability to list 5-colouring:
// each variable becomes an adjacent pair with lists {4,5}, each clause a pair
// of collector vertices with lists {1,2,3} joined completely to all variable
// vertices, plus six connector vertices per clause whose lists {p,4} tie the
// p-th literal to its collector.  Optionally a 5-clique is attached (vertex
// k_p adjacent to u exactly when p is missing from u's list), which turns the
// list instance into an equivalent plain 5-colouring instance.
struct Gadget {
    Graph g;
    std::vector<ColourSet> lists;  // clique vertices carry all five colours
    int k = 5;
    int n = 0, m = 0;
    std::vector<Vertex> pos, neg;                  // variable pair, by variable
    std::vector<Vertex> clause, clause_copy;       // collector pair, by clause
    std::vector<std::array<Vertex, 3>> conn;       // connectors on the positive side
    std::vector<std::array<Vertex, 3>> conn_copy;  // connectors on the complement side
    std::array<Vertex, 5> clique{-1, -1, -1, -1, -1};
    bool with_clique = false;
};

inline void validate_formula(const NaeFormula& f) {
    if (f.n < 0) throw UsageError("negative variable count");
    for (const auto& cl : f.clauses) {
        for (int v : cl)
            if (v < 1 || v > f.n) throw UsageError("clause variable out of range");
        if (cl[0] == cl[1] || cl[0] == cl[2] || cl[1] == cl[2])
            throw UsageError("clause with a repeated variable");
    }
}

inline Gadget build_gadget(const NaeFormula& f, bool with_clique) {
    validate_formula(f);
    Gadget gd;
    gd.n = f.n;
    gd.m = static_cast<int>(f.clauses.size());
    gd.with_clique = with_clique;
    auto full5 = ColourSet::full(5);
    auto pair_list = [](int a, int b) {
        ColourSet s;
        s.add(a);
        s.add(b);
        return s;
    };
    auto add = [&](ColourSet list) {
        Vertex v = gd.g.add_vertex();
        gd.lists.push_back(list);
        return v;
    };

    for (int i = 0; i < gd.n; ++i) {
        gd.pos.push_back(add(pair_list(4, 5)));
        gd.neg.push_back(add(pair_list(4, 5)));
        gd.g.add_edge(gd.pos[i], gd.neg[i]);
    }
    for (int j = 0; j < gd.m; ++j) {
        gd.clause.push_back(add(ColourSet::full(3)));
        gd.clause_copy.push_back(add(ColourSet::full(3)));
    }
    for (int i = 0; i < gd.n; ++i)
        for (int j = 0; j < gd.m; ++j)
            for (Vertex xv : {gd.pos[i], gd.neg[i]})
                for (Vertex cv : {gd.clause[j], gd.clause_copy[j]}) gd.g.add_edge(xv, cv);
    for (int j = 0; j < gd.m; ++j) {
        std::array<Vertex, 3> c{}, cc{};
        for (int p = 0; p < 3; ++p) {
            int var = f.clauses[j][p] - 1;
            c[p] = add(pair_list(p + 1, 4));
            gd.g.add_edge(gd.pos[var], c[p]);
            gd.g.add_edge(c[p], gd.clause[j]);
            cc[p] = add(pair_list(p + 1, 4));
            gd.g.add_edge(gd.neg[var], cc[p]);
            gd.g.add_edge(cc[p], gd.clause_copy[j]);
        }
        gd.conn.push_back(c);
        gd.conn_copy.push_back(cc);
    }
    if (with_clique) {
        std::size_t base = gd.lists.size();  // clique comes after every listed vertex
        for (int p = 0; p < 5; ++p) gd.clique[p] = add(full5);
        for (int p = 0; p < 5; ++p)
            for (int q = p + 1; q < 5; ++q) gd.g.add_edge(gd.clique[p], gd.clique[q]);
        for (std::size_t u = 0; u < base; ++u)
            for (int p = 1; p <= 5; ++p)
                if (!gd.lists[u].contains(p)) gd.g.add_edge(static_cast<Vertex>(u), gd.clique[p - 1]);
    }
    return gd;
}

inline Gadget build_g(const NaeFormula& f) { return build_gadget(f, false); }
inline Gadget build_g_prime(const NaeFormula& f) { return build_gadget(f, true); }

struct GadgetCheck {
    bool ok = false;
    std::string detail;
};

// Expected sizes: the plain construction has 2n+8m vertices and n+4nm+12m
// edges; the clique adds five vertices and 6n+22m+10 edges on top.
inline GadgetCheck check_sizes(const NaeFormula& f) {
    long n = f.n, m = static_cast<long>(f.clauses.size());
    Gadget g0 = build_g(f);
    Gadget g1 = build_g_prime(f);
    long v0 = g0.g.num_vertices(), e0 = static_cast<long>(g0.g.num_edges());
    long v1 = g1.g.num_vertices(), e1 = static_cast<long>(g1.g.num_edges());
    if (v0 != 2 * n + 8 * m) return {false, "base vertex count " + std::to_string(v0)};
    if (e0 != n + 4 * n * m + 12 * m) return {false, "base edge count " + std::to_string(e0)};
    if (v1 != 2 * n + 8 * m + 5) return {false, "extended vertex count " + std::to_string(v1)};
    if (e1 != 7 * n + 4 * n * m + 34 * m + 10)
        return {false, "extended edge count " + std::to_string(e1)};
    return {true, ""};
}

// Satisfying assignments and list colourings of the base construction must
// translate into each other: true variables take colour 4, and both
// constructive directions are exercised.
inline GadgetCheck check_encoding(const NaeFormula& f, OracleBudget budget = {}) {
    Gadget gd = build_g(f);
    NaeResult nae = nae_brute(f);
    Instance inst;
    inst.g = gd.g;
    inst.lists = gd.lists;
    inst.k = 5;
    inst.sync();
    OracleResult col = oracle_solve(inst, budget);
    if (col.status == OracleStatus::exhausted) return {false, "search budget exhausted"};
    bool colourable = col.status == OracleStatus::yes;
    if (nae.satisfiable != colourable)
        return {false, std::string("satisfiable=") + (nae.satisfiable ? "yes" : "no") +
                           " but colourable=" + (colourable ? "yes" : "no")};
    if (colourable) {
        // decode the found colouring into an assignment and re-check it
        std::vector<char> assignment(f.n + 1, 0);
        for (int i = 0; i < gd.n; ++i) {
            int c = col.colouring[gd.pos[i]];
            if (c != 4 && c != 5) return {false, "variable vertex with a non-variable colour"};
            assignment[i + 1] = c == 4;
        }
        for (const auto& cl : f.clauses) {
            bool a = assignment[cl[0]], b = assignment[cl[1]], c = assignment[cl[2]];
            if (a == b && b == c) return {false, "decoded assignment misses a clause"};
        }
    }
    if (nae.satisfiable) {
        // encode the found assignment into a colouring and verify it
        Colouring enc(gd.g.id_bound(), 0);
        for (int i = 0; i < gd.n; ++i) {
            bool tv = nae.assignment[i + 1];
            enc[gd.pos[i]] = tv ? 4 : 5;
            enc[gd.neg[i]] = tv ? 5 : 4;
        }
        for (int j = 0; j < gd.m; ++j) {
            for (int p = 0; p < 3; ++p) {
                int var = f.clauses[j][p] - 1;
                enc[gd.conn[j][p]] = enc[gd.pos[var]] == 4 ? p + 1 : 4;
                enc[gd.conn_copy[j][p]] = enc[gd.neg[var]] == 4 ? p + 1 : 4;
            }
            auto free_colour = [&](const std::array<Vertex, 3>& connectors) {
                ColourSet used;
                for (Vertex v : connectors)
                    if (enc[v] != 4) used.add(enc[v]);
                for (int c = 1; c <= 3; ++c)
                    if (!used.contains(c)) return c;
                return 0;
            };
            enc[gd.clause[j]] = free_colour(gd.conn[j]);
            enc[gd.clause_copy[j]] = free_colour(gd.conn_copy[j]);
            if (!enc[gd.clause[j]] || !enc[gd.clause_copy[j]])
                return {false, "encoded assignment leaves a collector without a colour"};
        }
        if (!colouring_ok(gd.g, gd.lists, enc))
            return {false, "encoded colouring fails verification"};
    }
    return {true, ""};
}

// Attaching the 5-clique must not change the answer: the extended graph is
// plainly 5-colourable exactly when the formula is satisfiable.
inline GadgetCheck check_extension(const NaeFormula& f, OracleBudget budget = {}) {
    Gadget gd = build_g_prime(f);
    std::vector<ColourSet> full(gd.lists.size(), ColourSet::full(5));
    NaeResult nae = nae_brute(f);
    OracleResult col = brute_list_colour(gd.g, full, 5, budget);
    if (col.status == OracleStatus::exhausted) return {false, "search budget exhausted"};
    bool colourable = col.status == OracleStatus::yes;
    if (nae.satisfiable != colourable)
        return {false, std::string("satisfiable=") + (nae.satisfiable ? "yes" : "no") +
                           " but 5-colourable=" + (colourable ? "yes" : "no")};
    return {true, ""};
}

// The extended construction must stay P3+P5-free, the class for which the
// reduction establishes hardness of plain 5-colouring.
inline GadgetCheck check_freeness(const NaeFormula& f) {
    Gadget gd = build_g_prime(f);
    auto witness = find_induced(gd.g, pattern_graph(PatternName::p3p5));
    if (witness) {
        std::string s = "found induced pattern at";
        for (Vertex v : *witness) s += " " + std::to_string(v + 1);
        return {false, s};
    }
    return {true, ""};
}

struct GadgetReport {
    GadgetCheck sizes, encoding, extension, freeness;
    bool ok() const { return sizes.ok && encoding.ok && extension.ok && freeness.ok; }
};

inline GadgetReport verify_gadget(const NaeFormula& f, OracleBudget budget = {}) {
    GadgetReport r;
    r.sizes = check_sizes(f);
    r.encoding = check_encoding(f, budget);
    r.extension = check_extension(f, budget);
    r.freeness = check_freeness(f);
    return r;
}

}  // namespace listcol
