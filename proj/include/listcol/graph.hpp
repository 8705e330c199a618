#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace listcol {

using Vertex = int;

// Undirected simple graph with stable vertex ids.  Ids are handed out
// monotonically and never reused, so a deleted vertex keeps its slot and
// external references (journals, certificates) stay valid.  Adjacency is kept
// both as sorted per-vertex neighbour lists and as a hashed edge set for O(1)
// edge queries.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) {
        for (int i = 0; i < n; ++i) add_vertex();
    }

    Vertex add_vertex() {
        adj_.emplace_back();
        alive_.push_back(1);
        return static_cast<Vertex>(adj_.size()) - 1;
    }

    // One past the largest id ever allocated; valid index bound for id-keyed arrays.
    int id_bound() const { return static_cast<int>(adj_.size()); }

    bool alive(Vertex v) const { return v >= 0 && v < id_bound() && alive_[v]; }

    void add_edge(Vertex u, Vertex v) {
        assert(alive(u) && alive(v));
        if (u == v) throw std::invalid_argument("self-loop");
        if (has_edge(u, v)) return;
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
        edges_.insert(edge_key(u, v));
    }

    bool has_edge(Vertex u, Vertex v) const {
        if (u == v) return false;
        return edges_.count(edge_key(u, v)) > 0;
    }

    void remove_vertex(Vertex v) {
        assert(alive(v));
        for (Vertex u : adj_[v]) {
            auto& a = adj_[u];
            a.erase(std::lower_bound(a.begin(), a.end(), v));
            edges_.erase(edge_key(u, v));
        }
        adj_[v].clear();
        alive_[v] = 0;
    }

    const std::vector<Vertex>& neighbours(Vertex v) const {
        assert(alive(v));
        return adj_[v];
    }

    int degree(Vertex v) const { return static_cast<int>(neighbours(v).size()); }

    // Live vertex ids in ascending order.
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> vs;
        vs.reserve(adj_.size());
        for (int v = 0; v < id_bound(); ++v)
            if (alive_[v]) vs.push_back(v);
        return vs;
    }

    int num_vertices() const {
        int n = 0;
        for (char a : alive_) n += a;
        return n;
    }

    int num_edges() const { return static_cast<int>(edges_.size()); }

    // All edges as (u, v) pairs with u < v, lexicographically sorted.
    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> es;
        es.reserve(edges_.size());
        for (int u = 0; u < id_bound(); ++u)
            if (alive_[u])
                for (Vertex v : adj_[u])
                    if (u < v) es.emplace_back(u, v);
        return es;
    }

    // Sorted common neighbours of u and v.
    std::vector<Vertex> common_neighbours(Vertex u, Vertex v) const {
        std::vector<Vertex> out;
        const auto& a = neighbours(u);
        const auto& b = neighbours(v);
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    // Merge the (pairwise) vertices of s into a fresh vertex adjacent to N(s);
    // removes s.  Returns the new vertex id.
    Vertex identify(const std::vector<Vertex>& s) {
        if (s.empty()) throw std::invalid_argument("identify: empty set");
        std::unordered_set<Vertex> in_s(s.begin(), s.end());
        std::vector<Vertex> nbhd;
        for (Vertex v : s) {
            assert(alive(v));
            for (Vertex u : neighbours(v))
                if (!in_s.count(u)) nbhd.push_back(u);
        }
        std::sort(nbhd.begin(), nbhd.end());
        nbhd.erase(std::unique(nbhd.begin(), nbhd.end()), nbhd.end());
        for (Vertex v : s) remove_vertex(v);
        Vertex w = add_vertex();
        for (Vertex u : nbhd) add_edge(w, u);
        return w;
    }

    // BFS distances from a set of sources; -1 for unreachable vertices.
    std::vector<int> distances_from(const std::vector<Vertex>& sources) const {
        std::vector<int> dist(id_bound(), -1);
        std::queue<Vertex> q;
        for (Vertex s : sources) {
            assert(alive(s));
            if (dist[s] == -1) {
                dist[s] = 0;
                q.push(s);
            }
        }
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (Vertex u : adj_[v])
                if (dist[u] == -1) {
                    dist[u] = dist[v] + 1;
                    q.push(u);
                }
        }
        return dist;
    }

    // Connected components as sorted vertex sets, ordered by smallest member.
    std::vector<std::vector<Vertex>> components() const {
        std::vector<char> seen(id_bound(), 0);
        std::vector<std::vector<Vertex>> comps;
        for (int v = 0; v < id_bound(); ++v) {
            if (!alive_[v] || seen[v]) continue;
            std::vector<Vertex> comp;
            std::queue<Vertex> q;
            q.push(v);
            seen[v] = 1;
            while (!q.empty()) {
                Vertex x = q.front();
                q.pop();
                comp.push_back(x);
                for (Vertex u : adj_[x])
                    if (!seen[u]) {
                        seen[u] = 1;
                        q.push(u);
                    }
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        return comps;
    }

    bool connected() const {
        auto vs = vertices();
        if (vs.empty()) return true;
        auto dist = distances_from({vs[0]});
        for (Vertex v : vs)
            if (dist[v] == -1) return false;
        return true;
    }

    // True when every component is a path (including isolated vertices).
    bool is_linear_forest() const {
        for (auto& comp : components()) {
            int deg_sum = 0;
            for (Vertex v : comp) {
                int d = degree(v);
                if (d > 2) return false;
                deg_sum += d;
            }
            // A path on k vertices has k-1 edges; any component with as many
            // edges as vertices contains a cycle.
            if (deg_sum / 2 != static_cast<int>(comp.size()) - 1) return false;
        }
        return true;
    }

private:
    static std::uint64_t edge_key(Vertex u, Vertex v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    }

    static void insert_sorted(std::vector<Vertex>& a, Vertex v) {
        a.insert(std::lower_bound(a.begin(), a.end(), v), v);
    }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<char> alive_;
    std::unordered_set<std::uint64_t> edges_;
};

// Path on t vertices 0-1-...-(t-1).
inline Graph path_graph(int t) {
    Graph g(t);
    for (int i = 0; i + 1 < t; ++i) g.add_edge(i, i + 1);
    return g;
}

// Cycle on t >= 3 vertices.
inline Graph cycle_graph(int t) {
    Graph g = path_graph(t);
    if (t >= 3) g.add_edge(0, t - 1);
    return g;
}

inline Graph complete_graph(int t) {
    Graph g(t);
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) g.add_edge(i, j);
    return g;
}

// Disjoint union; b's vertices are shifted past a's id range.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g;
    std::vector<Vertex> ma(a.id_bound(), -1), mb(b.id_bound(), -1);
    for (Vertex v : a.vertices()) ma[v] = g.add_vertex();
    for (Vertex v : b.vertices()) mb[v] = g.add_vertex();
    for (auto [u, v] : a.edges()) g.add_edge(ma[u], ma[v]);
    for (auto [u, v] : b.edges()) g.add_edge(mb[u], mb[v]);
    return g;
}

}  // namespace listcol
