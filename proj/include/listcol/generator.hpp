#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "colour_set.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "rng.hpp"
#include "subgraph.hpp"

namespace listcol {

struct GenOptions {
    int n = 10;
    double density = 0.3;
    std::vector<PatternName> forbid;  // reject graphs containing any of these
    bool require_p7 = false;          // reject graphs without an induced 7-path
    bool connected = true;
    bool plant_path = false;  // grow around a seeded 7-path instead of uniform edges
    int attempts = 50000;
    std::uint64_t seed = 1;
};

namespace detail {

inline Graph sample_uniform(int n, double density, Rng& rng) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.chance(density)) g.add_edge(i, j);
    return g;
}

// Seed an induced 7-path, then attach the remaining vertices in loose layers:
// close to the path, one step out, or two steps out.  The shape mimics how
// qualifying graphs decompose, which makes pattern-free samples common enough
// for rejection to work.
inline Graph sample_layered(int n, double density, Rng& rng) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int i = 0; i + 1 < 7; ++i) g.add_edge(i, i + 1);
    std::vector<Vertex> layer1, layer2;
    for (Vertex v = 7; v < n; ++v) {
        int roll = rng.uniform(0, 99);
        int layer = roll < 55 ? 1 : (roll < 85 ? 2 : 3);
        if (layer >= 2 && layer1.empty()) layer = 1;
        if (layer == 3 && layer2.size() < 2) layer = 2;
        if (layer == 1) {
            int centre = rng.uniform(1, 5);  // path positions 0..6; stay off the ends
            g.add_edge(v, centre);
            if (rng.chance(0.6)) g.add_edge(v, centre - 1);
            if (rng.chance(0.6)) g.add_edge(v, centre + 1);
            for (Vertex w : layer1)
                if (rng.chance(density)) g.add_edge(v, w);
            layer1.push_back(v);
        } else if (layer == 2) {
            g.add_edge(v, rng.pick(layer1));
            if (layer1.size() > 1 && rng.chance(0.4)) g.add_edge(v, rng.pick(layer1));
            if (!layer2.empty() && rng.chance(0.3)) g.add_edge(v, rng.pick(layer2));
            layer2.push_back(v);
        } else {
            Vertex a = rng.pick(layer2), b = rng.pick(layer2);
            g.add_edge(v, a);
            if (b != a) g.add_edge(v, b);
        }
    }
    return g;
}

}  // namespace detail

inline Graph generate(const GenOptions& opts, Rng& rng) {
    if (opts.n < 0) throw UsageError("negative vertex count");
    if (opts.plant_path && opts.n < 7)
        throw UsageError("planting a 7-path needs at least seven vertices");
    std::vector<Graph> forbid_patterns;
    for (PatternName p : opts.forbid) forbid_patterns.push_back(pattern_graph(p));
    for (int attempt = 0; attempt < opts.attempts; ++attempt) {
        Graph g = opts.plant_path ? detail::sample_layered(opts.n, opts.density, rng)
                                  : detail::sample_uniform(opts.n, opts.density, rng);
        if (opts.connected && !g.connected()) continue;
        if (opts.require_p7 && !opts.plant_path && !find_induced_path(g, 7)) continue;
        bool clean = true;
        for (const Graph& p : forbid_patterns)
            if (find_induced(g, p)) {
                clean = false;
                break;
            }
        if (!clean) continue;
        return g;
    }
    throw ExhaustedError("generator gave up after " + std::to_string(opts.attempts) + " attempts");
}

inline Graph generate(const GenOptions& opts) {
    Rng rng(opts.seed);
    return generate(opts, rng);
}

// Independent random candidate lists over colours 1..k, empty allowed on
// request (an empty list just forces the answer).
inline std::vector<ColourSet> random_lists(const Graph& g, Rng& rng, int k = 3,
                                           bool allow_empty = false) {
    std::vector<ColourSet> lists(g.id_bound());
    int lo = allow_empty ? 0 : 1;
    for (Vertex v : g.vertices()) {
        int bits = rng.uniform(lo, (1 << k) - 1);
        ColourSet s;
        for (int c = 1; c <= k; ++c)
            if (bits & (1 << (c - 1))) s.add(c);
        lists[v] = s;
    }
    return lists;
}

// Uniformly random formula: each clause is an ordered triple of distinct
// variables.
inline NaeFormula random_formula(int n, int m, Rng& rng) {
    if (n < 3 && m > 0) throw UsageError("clauses need at least three variables");
    NaeFormula f;
    f.n = n;
    for (int j = 0; j < m; ++j) {
        int a = rng.uniform(1, n), b, c;
        do b = rng.uniform(1, n);
        while (b == a);
        do c = rng.uniform(1, n);
        while (c == a || c == b);
        f.clauses.push_back({a, b, c});
    }
    return f;
}

}  // namespace listcol
