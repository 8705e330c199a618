#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"

namespace listcol {

// Graph-with-lists text format (DIMACS-style):
//   c <comment>
//   p <n> <m>            header ("p edge <n> <m>" also accepted)
//   e <u> <v>            edge, 1-based endpoints
//   k <int>              palette size (default 3)
//   l <v> <c1> <c2> ...  colour list; vertices without an l line get the full palette
inline Instance read_instance(std::istream& in) {
    Graph g;
    int n = -1, m_declared = 0, m_seen = 0, k = 3;
    std::vector<std::pair<int, ColourSet>> pending_lists;
    std::vector<char> has_list;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        auto fail = [&](const std::string& why) -> void {
            throw UsageError("line " + std::to_string(lineno) + ": " + why);
        };
        if (tag == "p") {
            if (n >= 0) fail("duplicate p line");
            std::string first;
            if (!(ls >> first)) fail("truncated p line");
            if (first == "edge" || first == "col") {
                if (!(ls >> n >> m_declared)) fail("truncated p line");
            } else {
                try {
                    n = std::stoi(first);
                } catch (...) {
                    fail("bad vertex count");
                }
                if (!(ls >> m_declared)) fail("truncated p line");
            }
            if (n < 0 || m_declared < 0) fail("negative p counts");
            for (int i = 0; i < n; ++i) g.add_vertex();
        } else if (tag == "e") {
            int u, v;
            if (!(ls >> u >> v)) fail("truncated e line");
            if (n < 0) fail("e line before p line");
            if (u < 1 || u > n || v < 1 || v > n) fail("edge endpoint out of range");
            if (u == v) fail("self-loop");
            g.add_edge(u - 1, v - 1);
            ++m_seen;
        } else if (tag == "k") {
            if (!(ls >> k) || k < 1 || k > 5) fail("palette size must be 1..5");
        } else if (tag == "l") {
            int v;
            if (!(ls >> v)) fail("truncated l line");
            if (n < 0) fail("l line before p line");
            if (v < 1 || v > n) fail("list vertex out of range");
            ColourSet s;
            int c;
            while (ls >> c) {
                if (c < 1 || c > 5) fail("list colour out of range");
                s.add(c);
            }
            pending_lists.emplace_back(v - 1, s);
        } else {
            fail("unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw UsageError("missing p line");
    if (m_seen != m_declared)
        throw UsageError("p line declares " + std::to_string(m_declared) + " edges but " +
                         std::to_string(m_seen) + " e lines follow");
    Instance inst = make_instance(std::move(g), k);
    for (auto& [v, s] : pending_lists) {
        if (!s.subset_of(ColourSet::full(k)))
            throw UsageError("list of vertex " + std::to_string(v + 1) + " exceeds palette");
        inst.lists[v] = s;
    }
    return inst;
}

inline void write_instance(std::ostream& out, const Instance& inst) {
    auto vs = inst.g.vertices();
    std::vector<int> index(inst.g.id_bound(), 0);
    int next = 1;
    for (Vertex v : vs) index[v] = next++;
    out << "p " << vs.size() << " " << inst.g.num_edges() << "\n";
    for (auto [u, v] : inst.g.edges()) out << "e " << index[u] << " " << index[v] << "\n";
    out << "k " << inst.k << "\n";
    for (Vertex v : vs) {
        out << "l " << index[v];
        inst.list(v).for_each([&](int c) { out << " " << c; });
        out << "\n";
    }
}

// Not-all-equal satisfiability input: each clause is an ordered triple of
// (positive) variables, and an assignment satisfies it when the three values
// are not all equal.
struct NaeFormula {
    int n = 0;                              // variables 1..n
    std::vector<std::array<int, 3>> clauses;  // 1-based variable indices
};

// Formula text format:
//   v <n>
//   c <g> <h> <i>        one line per clause, 1-based variables
inline NaeFormula read_formula(std::istream& in) {
    NaeFormula f;
    bool have_n = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        auto fail = [&](const std::string& why) -> void {
            throw UsageError("line " + std::to_string(lineno) + ": " + why);
        };
        if (tag == "v") {
            if (have_n) fail("duplicate v line");
            if (!(ls >> f.n) || f.n < 0) fail("bad variable count");
            have_n = true;
        } else if (tag == "c") {
            int g, h, i;
            if (!(ls >> g >> h >> i)) fail("truncated clause line");
            if (!have_n) fail("clause before v line");
            for (int x : {g, h, i})
                if (x < 1 || x > f.n) fail("clause variable out of range");
            f.clauses.push_back({g, h, i});
        } else {
            fail("unknown line tag '" + tag + "'");
        }
    }
    if (!have_n) throw UsageError("missing v line");
    return f;
}

inline void write_formula(std::ostream& out, const NaeFormula& f) {
    out << "v " << f.n << "\n";
    for (auto& cl : f.clauses) out << "c " << cl[0] << " " << cl[1] << " " << cl[2] << "\n";
}

// Certificate lines, 1-based vertex numbering matching write_instance order.
inline void write_certificate(std::ostream& out, const Graph& g, const Colouring& col) {
    int next = 1;
    for (Vertex v : g.vertices()) out << "v " << next++ << " " << col[v] << "\n";
}

}  // namespace listcol
