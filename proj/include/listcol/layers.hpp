#pragma once

#include <array>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"

namespace listcol {

// Partition of the live vertices by distance from the anchored induced path:
// depth 0 on the path itself, 1..3 beyond it.  Anything farther (or
// unreachable) violates the structure the solver relies on.
struct LayerState {
    std::array<Vertex, 7> n0;
    std::vector<int> depth;  // by vertex id
    std::vector<Vertex> n1, n2, n3;  // ascending

    bool in_n3(Vertex v) const { return depth[v] == 3; }
};

inline LayerState compute_layers(const Instance& inst) {
    if (!inst.n0) throw UsageError("layer computation requires an anchored path");
    inst.check_n0();
    LayerState st;
    st.n0 = *inst.n0;
    st.depth = inst.g.distances_from(std::vector<Vertex>(st.n0.begin(), st.n0.end()));
    for (Vertex v : inst.g.vertices()) {
        switch (st.depth[v]) {
            case 0: break;
            case 1: st.n1.push_back(v); break;
            case 2: st.n2.push_back(v); break;
            case 3: st.n3.push_back(v); break;
            default:
                throw StructureViolation("layer-depth",
                                         "vertex " + std::to_string(v) +
                                             (st.depth[v] < 0 ? " unreachable from the anchored path"
                                                              : " at distance > 3 from the anchored path"));
        }
    }
    return st;
}

// Vertices still carrying a full 3-list (all in layer 2 on valid instances)
// and their layer-1 neighbours.
struct ActiveState {
    std::vector<Vertex> a2, a1;  // ascending
    std::vector<char> in_a2, in_a1;  // by vertex id

    bool a2_member(Vertex v) const { return v < static_cast<int>(in_a2.size()) && in_a2[v]; }
    bool a1_member(Vertex v) const { return v < static_cast<int>(in_a1.size()) && in_a1[v]; }
};

inline ActiveState compute_active(const Instance& inst, const LayerState& ls) {
    ActiveState st;
    st.in_a2.assign(inst.g.id_bound(), 0);
    st.in_a1.assign(inst.g.id_bound(), 0);
    for (Vertex u : ls.n2)
        if (inst.list(u).size() == 3) {
            st.a2.push_back(u);
            st.in_a2[u] = 1;
        }
    for (Vertex w : ls.n1)
        for (Vertex u : inst.g.neighbours(w))
            if (st.in_a2[u]) {
                st.a1.push_back(w);
                st.in_a1[w] = 1;
                break;
            }
    return st;
}

// A(i, j): active layer-1 neighbours of path vertex i that avoid path vertex
// j (1-based path positions).
inline std::vector<Vertex> active_pair_set(const Instance& inst, const LayerState& ls,
                                           const ActiveState& as, int i, int j) {
    std::vector<Vertex> out;
    Vertex vi = ls.n0[i - 1], vj = ls.n0[j - 1];
    for (Vertex w : as.a1)
        if (inst.g.has_edge(w, vi) && !inst.g.has_edge(w, vj)) out.push_back(w);
    return out;
}

}  // namespace listcol
