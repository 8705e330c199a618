#pragma once

// Shared test utilities: tiny-graph isomorphism, exhaustive enumeration of
// connected graphs up to seven vertices (one representative per isomorphism
// class), and fixture builders.

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <unordered_map>
#include <vector>

#include <listcol/listcol.hpp>

namespace testutil {

using listcol::ColourSet;
using listcol::Graph;
using listcol::Instance;
using listcol::Vertex;

inline ColourSet cs(std::initializer_list<int> colours) {
    ColourSet s;
    for (int c : colours) s.add(c);
    return s;
}

inline std::vector<ColourSet> full_lists(const Graph& g, int k = 3) {
    return std::vector<ColourSet>(g.id_bound(), ColourSet::full(k));
}

inline Instance make_listed(Graph g, std::vector<ColourSet> lists, int k = 3) {
    Instance inst;
    inst.g = std::move(g);
    inst.lists = std::move(lists);
    inst.k = k;
    inst.sync();
    return inst;
}

// Adjacency-bitmask graph on at most eight vertices.
struct TinyGraph {
    int n = 0;
    std::array<std::uint8_t, 8> adj{};

    bool edge(int i, int j) const { return adj[i] >> j & 1; }
    int degree(int i) const { return __builtin_popcount(adj[i]); }
};

inline bool tiny_connected(const TinyGraph& g) {
    if (g.n == 0) return false;
    std::uint8_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint8_t next = 0;
        for (int i = 0; i < g.n; ++i)
            if (frontier >> i & 1) next |= g.adj[i];
        frontier = next & static_cast<std::uint8_t>(~seen);
        seen |= next;
    }
    return seen == (1u << g.n) - 1;
}

// Permutation backtracking; fine for n <= 8.
inline bool tiny_isomorphic(const TinyGraph& a, const TinyGraph& b) {
    if (a.n != b.n) return false;
    std::array<int, 8> da{}, db{};
    for (int i = 0; i < a.n; ++i) da[i] = a.degree(i);
    for (int i = 0; i < b.n; ++i) db[i] = b.degree(i);
    {
        auto sa = da, sb = db;
        std::sort(sa.begin(), sa.begin() + a.n);
        std::sort(sb.begin(), sb.begin() + b.n);
        if (sa != sb) return false;
    }
    std::array<int, 8> map{};
    std::uint8_t used = 0;
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == a.n) return true;
        for (int j = 0; j < b.n; ++j) {
            if (used >> j & 1) continue;
            if (da[i] != db[j]) continue;
            bool ok = true;
            for (int p = 0; p < i; ++p)
                if (a.edge(i, p) != b.edge(j, map[p])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            map[i] = j;
            used |= 1u << j;
            if (self(self, i + 1)) return true;
            used &= ~(1u << j);
        }
        return false;
    };
    return rec(rec, 0);
}

// Isomorphism-invariant hash: iterated neighbourhood refinement.
inline std::uint64_t tiny_key(const TinyGraph& g) {
    std::array<std::uint64_t, 8> col{};
    for (int i = 0; i < g.n; ++i) col[i] = static_cast<std::uint64_t>(g.degree(i)) + 1;
    for (int round = 0; round < 3; ++round) {
        std::array<std::uint64_t, 8> next{};
        for (int i = 0; i < g.n; ++i) {
            std::array<std::uint64_t, 8> nb{};
            int cnt = 0;
            for (int j = 0; j < g.n; ++j)
                if (g.edge(i, j)) nb[cnt++] = col[j];
            std::sort(nb.begin(), nb.begin() + cnt);
            std::uint64_t h = col[i] * 1099511628211ull + 14695981039346656037ull;
            for (int t = 0; t < cnt; ++t) h = (h ^ nb[t]) * 1099511628211ull;
            next[i] = h;
        }
        col = next;
    }
    std::sort(col.begin(), col.begin() + g.n);
    std::uint64_t h = static_cast<std::uint64_t>(g.n) * 31 + 7;
    for (int i = 0; i < g.n; ++i) h = (h ^ col[i]) * 1099511628211ull;
    return h;
}

inline Graph to_graph(const TinyGraph& t) {
    Graph g;
    for (int i = 0; i < t.n; ++i) g.add_vertex();
    for (int i = 0; i < t.n; ++i)
        for (int j = i + 1; j < t.n; ++j)
            if (t.edge(i, j)) g.add_edge(i, j);
    return g;
}

// One representative per isomorphism class of connected graphs on
// min_n..max_n vertices.  Exhaustive over labeled graphs with hash-bucketed
// isomorphism rejection; max_n <= 7 keeps this a few seconds.
inline std::vector<Graph> connected_classes(int max_n, int min_n = 1) {
    std::vector<Graph> out;
    for (int n = min_n; n <= max_n; ++n) {
        int pairs = n * (n - 1) / 2;
        std::vector<std::pair<int, int>> pos;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pos.push_back({i, j});
        std::unordered_map<std::uint64_t, std::vector<TinyGraph>> reps;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            TinyGraph t;
            t.n = n;
            for (int b = 0; b < pairs; ++b)
                if (mask >> b & 1) {
                    auto [i, j] = pos[b];
                    t.adj[i] |= 1u << j;
                    t.adj[j] |= 1u << i;
                }
            if (!tiny_connected(t)) continue;
            auto& bucket = reps[tiny_key(t)];
            bool known = false;
            for (const TinyGraph& r : bucket)
                if (tiny_isomorphic(t, r)) {
                    known = true;
                    break;
                }
            if (known) continue;
            bucket.push_back(t);
            out.push_back(to_graph(t));
        }
    }
    return out;
}

// Hand-built inputs that keep a branching child open long enough to reach the
// later pipeline stages, which random graphs almost never do.  Each pairs a
// graph with its lists and the pattern it is free of.
struct DeepFixture {
    Graph g;
    std::vector<ColourSet> lists;
    listcol::TargetPattern pattern;
};

// Hubs with paired same-coloured attachments carry two depth-2 vertices whose
// hub sets are incomparable, so neither list dominates the other and the pair
// expansion has real conflicts to split on.
inline DeepFixture deep_pair_fixture() {
    Graph g = listcol::path_graph(7);
    int ua = g.add_vertex(), ub = g.add_vertex(), uc = g.add_vertex(), ud = g.add_vertex();
    int v1 = g.add_vertex(), v2 = g.add_vertex();
    g.add_edge(ua, 0); g.add_edge(ua, 2);
    g.add_edge(ub, 1); g.add_edge(ub, 3);
    g.add_edge(uc, 4); g.add_edge(uc, 6);
    g.add_edge(ud, 1); g.add_edge(ud, 5);
    g.add_edge(v1, ua); g.add_edge(v1, ub); g.add_edge(v1, uc);
    g.add_edge(v2, ub); g.add_edge(v2, uc); g.add_edge(v2, ud);
    g.add_edge(ua, ub); g.add_edge(ua, ud); g.add_edge(uc, ud);
    auto lists = full_lists(g);
    return {std::move(g), std::move(lists), listcol::TargetPattern::p2p5};
}

// Four window hubs plus a mid-path hub feed two adjacent depth-2 vertices, so
// the two-valued window survives into the anchor rounds.
inline DeepFixture anchored_outer_fixture() {
    Graph g = listcol::path_graph(7);
    int w1 = g.add_vertex(), w2 = g.add_vertex(), w3 = g.add_vertex(), w4 = g.add_vertex();
    int y1 = g.add_vertex();
    int s1 = g.add_vertex(), s2 = g.add_vertex();
    for (int w : {w1, w2, w3, w4}) { g.add_edge(w, 2); g.add_edge(w, 4); }
    g.add_edge(y1, 3);
    g.add_edge(s1, w1); g.add_edge(s1, w2); g.add_edge(s1, y1);
    g.add_edge(s2, w3); g.add_edge(s2, w4); g.add_edge(s2, y1);
    g.add_edge(s1, s2);
    auto lists = full_lists(g);
    return {std::move(g), std::move(lists), listcol::TargetPattern::p3p4};
}

// All window hubs share one list, so the window is uniform and the run takes
// the pivot-branching route.  The pinned mid-path vertex steers the first
// branching child onto the colouring that keeps the window open, and the
// private hub's colours are both covered by its deep partner, so nothing gets
// a free colour early.
inline DeepFixture uniform_window_fixture() {
    Graph g = listcol::path_graph(7);
    int w1 = g.add_vertex(), w2 = g.add_vertex(), w3 = g.add_vertex(), w4 = g.add_vertex();
    int s = g.add_vertex(), y = g.add_vertex();
    for (int w : {w1, w2, w3}) { g.add_edge(w, 2); g.add_edge(w, 4); }
    g.add_edge(w4, 3);
    g.add_edge(s, w1); g.add_edge(s, w2); g.add_edge(s, w3);
    g.add_edge(y, s); g.add_edge(y, w4);
    auto lists = full_lists(g);
    lists[3] = cs({3});
    lists[static_cast<std::size_t>(y)] = cs({1, 2});
    return {std::move(g), std::move(lists), listcol::TargetPattern::p3p4};
}

// A 7-path with the anchor recorded, ready for rule-level tests that need
// layer structure.
inline Instance anchored_path(int extra_vertices = 0) {
    Graph g = listcol::path_graph(7);
    for (int i = 0; i < extra_vertices; ++i) g.add_vertex();
    Instance inst = make_listed(std::move(g), {}, 3);
    inst.lists.assign(inst.g.id_bound(), ColourSet::full(3));
    inst.n0 = std::array<Vertex, 7>{0, 1, 2, 3, 4, 5, 6};
    inst.sync();
    return inst;
}

}  // namespace testutil
