#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"
#include "layers.hpp"
#include "subgraph.hpp"

namespace listcol {

// Structural invariants the solver relies on between phases.  Each checker
// throws StructureViolation when the invariant fails; the solver treats that
// as a signal to fall back to exhaustive search rather than answer wrongly.

// Components of the graph induced on layers 2 and 3 must be cliques on at
// most three vertices, each containing at least one layer-2 vertex and at
// most one layer-3 vertex.
inline void check_outer_cliques(const Instance& inst, const LayerState& ls) {
    std::vector<char> outer(inst.g.id_bound(), 0);
    for (Vertex v : ls.n2) outer[v] = 1;
    for (Vertex v : ls.n3) outer[v] = 1;
    std::vector<char> seen(inst.g.id_bound(), 0);
    for (Vertex start : ls.n2) {
        if (seen[start]) continue;
        std::vector<Vertex> comp{start};
        seen[start] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex w : inst.g.neighbours(comp[i]))
                if (outer[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        if (comp.size() > 3)
            throw StructureViolation("outer-cliques", "outer component of size " +
                                                          std::to_string(comp.size()));
        int deep = 0;
        for (Vertex v : comp) {
            if (ls.in_n3(v)) ++deep;
            for (Vertex w : comp)
                if (v < w && !inst.g.has_edge(v, w))
                    throw StructureViolation("outer-cliques", "outer component is not a clique");
        }
        if (deep > 1)
            throw StructureViolation("outer-cliques",
                                     "outer component with two layer-3 vertices");
    }
    for (Vertex v : ls.n3)
        if (!seen[v])
            throw StructureViolation("outer-cliques",
                                     "layer-3 vertex with no layer-2 neighbour");
}

// After the first propagation fixpoint: layer 3 is independent and each of
// its vertices has a 2-list and exactly two layer-2 neighbours.
inline void check_deep_layer(const Instance& inst, const LayerState& ls) {
    for (Vertex v : ls.n3) {
        if (inst.list(v).size() != 2)
            throw StructureViolation("deep-layer", "layer-3 vertex without a 2-list");
        int n2_nbrs = 0;
        for (Vertex w : inst.g.neighbours(v)) {
            if (ls.in_n3(w))
                throw StructureViolation("deep-layer", "edge inside layer 3");
            if (ls.depth[w] == 2) ++n2_nbrs;
        }
        if (n2_nbrs != 2)
            throw StructureViolation("deep-layer", "layer-3 vertex with " +
                                                       std::to_string(n2_nbrs) +
                                                       " layer-2 neighbours");
    }
}

// Every remaining full 3-list must sit in layer 2.
inline void check_full_lists_inner(const Instance& inst, const LayerState& ls) {
    for (Vertex v : inst.g.vertices())
        if (inst.list(v).size() == 3 && ls.depth[v] != 2)
            throw StructureViolation("full-lists-inner",
                                     "full list outside layer 2 at vertex " + std::to_string(v));
}

// For every pair of path positions i < j with j - i >= 2, at least one of
// A(i, j), A(j, i) must be empty (checked after the pairwise branchings).
inline void check_pair_property(const Instance& inst, const LayerState& ls,
                                const ActiveState& as) {
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 2; j <= 7; ++j)
            if (!active_pair_set(inst, ls, as, i, j).empty() &&
                !active_pair_set(inst, ls, as, j, i).empty())
                throw StructureViolation("pair-property",
                                         "both active pair sets nonempty for positions " +
                                             std::to_string(i) + "," + std::to_string(j));
}

}  // namespace listcol
