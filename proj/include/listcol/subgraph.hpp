#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace listcol {

// First induced path on t vertices in DFS order (start vertices ascending,
// extensions ascending), or nothing.  Endpoint-to-endpoint vertex order.
inline std::optional<std::vector<Vertex>> find_induced_path(const Graph& g, int t) {
    if (t < 1 || t > 8) throw UsageError("induced path length must be 1..8");
    auto vs = g.vertices();
    if (t == 1) {
        if (vs.empty()) return std::nullopt;
        return std::vector<Vertex>{vs[0]};
    }
    std::vector<Vertex> path;
    std::vector<char> used(g.id_bound(), 0);
    auto extend = [&](auto&& self) -> bool {
        if (static_cast<int>(path.size()) == t) return true;
        Vertex last = path.back();
        for (Vertex u : g.neighbours(last)) {
            if (used[u]) continue;
            bool induced = true;
            for (int i = 0; i + 1 < static_cast<int>(path.size()); ++i)
                if (g.has_edge(u, path[i])) {
                    induced = false;
                    break;
                }
            if (!induced) continue;
            path.push_back(u);
            used[u] = 1;
            if (self(self)) return true;
            path.pop_back();
            used[u] = 0;
        }
        return false;
    };
    for (Vertex s : vs) {
        path.assign(1, s);
        used[s] = 1;
        if (extend(extend)) return path;
        used[s] = 0;
    }
    return std::nullopt;
}

// K4 membership via edges and their common neighbourhoods.
inline bool contains_k4(const Graph& g) {
    for (auto [u, v] : g.edges()) {
        auto common = g.common_neighbours(u, v);
        for (size_t i = 0; i < common.size(); ++i)
            for (size_t j = i + 1; j < common.size(); ++j)
                if (g.has_edge(common[i], common[j])) return true;
    }
    return false;
}

// Backtracking search for an induced copy of pattern (at most 8 vertices) in
// host.  Returns the image of pattern vertex i at position i, or nothing.
// Host candidates are tried in ascending id order, so the first witness is
// deterministic.
inline std::optional<std::vector<Vertex>> find_induced(const Graph& host, const Graph& pattern) {
    auto pv = pattern.vertices();
    int pn = static_cast<int>(pv.size());
    if (pn > 8) throw UsageError("pattern too large (at most 8 vertices)");
    if (pn == 0) return std::vector<Vertex>{};
    auto hv = host.vertices();
    int hn = static_cast<int>(hv.size());
    if (hn < pn) return std::nullopt;

    // Dense adjacency snapshot of the live host vertices.
    int words = (hn + 63) / 64;
    std::vector<std::uint64_t> adj(static_cast<size_t>(hn) * words, 0);
    std::vector<int> host_index(host.id_bound(), -1);
    for (int i = 0; i < hn; ++i) host_index[hv[i]] = i;
    for (int i = 0; i < hn; ++i)
        for (Vertex u : host.neighbours(hv[i])) {
            int j = host_index[u];
            adj[static_cast<size_t>(i) * words + j / 64] |= 1ull << (j % 64);
        }

    std::vector<int> pdeg(pn);
    for (int i = 0; i < pn; ++i) pdeg[i] = pattern.degree(pv[i]);
    // pattern adjacency between positions
    std::vector<std::vector<char>> padj(pn, std::vector<char>(pn, 0));
    for (int i = 0; i < pn; ++i)
        for (int j = 0; j < pn; ++j) padj[i][j] = pattern.has_edge(pv[i], pv[j]);

    std::vector<int> image(pn, -1);  // host indices
    std::vector<std::uint64_t> mask(words);
    auto place = [&](auto&& self, int d) -> bool {
        if (d == pn) return true;
        // Candidates: unused hosts consistent with every mapped position.
        for (int w = 0; w < words; ++w) mask[w] = ~0ull;
        if (hn % 64) mask[words - 1] = (1ull << (hn % 64)) - 1;
        for (int i = 0; i < d; ++i) {
            const std::uint64_t* row = &adj[static_cast<size_t>(image[i]) * words];
            if (padj[i][d])
                for (int w = 0; w < words; ++w) mask[w] &= row[w];
            else
                for (int w = 0; w < words; ++w) mask[w] &= ~row[w];
            mask[image[i] / 64] &= ~(1ull << (image[i] % 64));
        }
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = mask[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                bits &= bits - 1;
                int cand = w * 64 + b;
                // An induced embedding needs host degree >= pattern degree.
                if (host.degree(hv[cand]) < pdeg[d]) continue;
                image[d] = cand;
                if (self(self, d + 1)) return true;
                image[d] = -1;
            }
        }
        return false;
    };
    if (!place(place, 0)) return std::nullopt;
    std::vector<Vertex> witness(pn);
    for (int i = 0; i < pn; ++i) witness[i] = hv[image[i]];
    return witness;
}

// True when witness realizes pattern as an induced subgraph of host.
inline bool witness_ok(const Graph& host, const Graph& pattern, const std::vector<Vertex>& witness) {
    auto pv = pattern.vertices();
    if (witness.size() != pv.size()) return false;
    for (size_t i = 0; i < witness.size(); ++i) {
        if (!host.alive(witness[i])) return false;
        for (size_t j = i + 1; j < witness.size(); ++j) {
            if (witness[i] == witness[j]) return false;
            if (host.has_edge(witness[i], witness[j]) != pattern.has_edge(pv[i], pv[j])) return false;
        }
    }
    return true;
}

enum class PatternName { p7, k4, p2p5, p3p4, p3p5 };

inline Graph pattern_graph(PatternName name) {
    switch (name) {
        case PatternName::p7: return path_graph(7);
        case PatternName::k4: return complete_graph(4);
        case PatternName::p2p5: return disjoint_union(path_graph(2), path_graph(5));
        case PatternName::p3p4: return disjoint_union(path_graph(3), path_graph(4));
        case PatternName::p3p5: return disjoint_union(path_graph(3), path_graph(5));
    }
    throw UsageError("unknown pattern");
}

inline std::optional<PatternName> parse_pattern(const std::string& s) {
    if (s == "p7") return PatternName::p7;
    if (s == "k4") return PatternName::k4;
    if (s == "p2p5") return PatternName::p2p5;
    if (s == "p3p4") return PatternName::p3p4;
    if (s == "p3p5") return PatternName::p3p5;
    return std::nullopt;
}

inline std::string pattern_str(PatternName name) {
    switch (name) {
        case PatternName::p7: return "p7";
        case PatternName::k4: return "k4";
        case PatternName::p2p5: return "p2p5";
        case PatternName::p3p4: return "p3p4";
        case PatternName::p3p5: return "p3p5";
    }
    return "?";
}

}  // namespace listcol
