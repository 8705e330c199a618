#pragma once

#include <utility>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"

namespace listcol {

struct TwoListResult {
    bool yes = false;
    Colouring colouring;  // filled on yes
};

namespace detail {

// Iterative Tarjan strongly-connected components over a graph in compressed
// sparse row form; comp ids are assigned in completion order (sinks first).
class SccFinder {
public:
    SccFinder(const std::vector<int>& head, const std::vector<int>& dst)
        : head_(head), dst_(dst) {
        int n = static_cast<int>(head.size()) - 1;
        comp_.assign(n, -1);
        index_.assign(n, -1);
        low_.assign(n, 0);
        on_stack_.assign(n, 0);
        for (int v = 0; v < n; ++v)
            if (index_[v] == -1) run(v);
    }

    int comp(int v) const { return comp_[v]; }

private:
    void run(int root) {
        struct Frame {
            int v;
            int edge;
        };
        std::vector<Frame> call;
        call.push_back({root, head_[root]});
        while (!call.empty()) {
            auto& f = call.back();
            int v = f.v;
            if (f.edge == head_[v]) {
                index_[v] = low_[v] = next_index_++;
                stack_.push_back(v);
                on_stack_[v] = 1;
            }
            bool descended = false;
            while (f.edge < head_[v + 1]) {
                int u = dst_[f.edge++];
                if (index_[u] == -1) {
                    call.push_back({u, head_[u]});
                    descended = true;
                    break;
                }
                if (on_stack_[u] && index_[u] < low_[v]) low_[v] = index_[u];
            }
            if (descended) continue;
            if (low_[v] == index_[v]) {
                while (true) {
                    int u = stack_.back();
                    stack_.pop_back();
                    on_stack_[u] = 0;
                    comp_[u] = next_comp_;
                    if (u == v) break;
                }
                ++next_comp_;
            }
            call.pop_back();
            if (!call.empty() && low_[v] < low_[call.back().v]) low_[call.back().v] = low_[v];
        }
    }

    const std::vector<int>& head_;
    const std::vector<int>& dst_;
    std::vector<int> comp_, index_, low_;
    std::vector<char> on_stack_;
    std::vector<int> stack_;
    int next_index_ = 0;
    int next_comp_ = 0;
};

}  // namespace detail

// Decide a list-colouring instance in which every list has size at most two,
// via the implication graph of the induced 2-SAT formula.  Linear in the size
// of the graph; the implication graph is laid out flat so big instances scan
// rather than chase pointers.
inline TwoListResult two_list_solve(const Graph& g, const std::vector<ColourSet>& lists) {
    TwoListResult res;
    auto vs = g.vertices();
    std::vector<int> var(g.id_bound(), -1);
    int nvars = 0;
    for (Vertex v : vs) {
        int sz = lists[v].size();
        if (sz == 0) return res;
        if (sz > 2) throw UsageError("two_list_solve requires lists of size at most 2");
        if (sz == 2) var[v] = nvars++;
    }

    // Variable i: "vertex takes the smaller colour of its list".
    // Literals 2i (true) and 2i+1 (false).
    std::vector<std::pair<int, int>> arcs;  // directed implications
    arcs.reserve(4 * static_cast<std::size_t>(g.num_edges()));
    auto add_clause = [&](int lit_a, int lit_b) {
        // (a or b): ¬a -> b, ¬b -> a
        arcs.push_back({lit_a ^ 1, lit_b});
        arcs.push_back({lit_b ^ 1, lit_a});
    };
    auto first = [&](Vertex v) { return lists[v].min_colour(); };
    // Literal asserting "v != c"; only meaningful when c is in v's 2-list.
    auto lit_not = [&](Vertex v, int c) { return 2 * var[v] + (c == first(v) ? 1 : 0); };

    for (auto [u, v] : g.edges()) {
        ColourSet shared = lists[u] & lists[v];
        bool u2 = var[u] >= 0, v2 = var[v] >= 0;
        bool bad = false;
        shared.for_each([&](int c) {
            if (bad) return;
            if (!u2 && !v2) {
                bad = true;  // two equal forced colours
            } else if (!u2) {
                add_clause(lit_not(v, c), lit_not(v, c));
            } else if (!v2) {
                add_clause(lit_not(u, c), lit_not(u, c));
            } else {
                add_clause(lit_not(u, c), lit_not(v, c));
            }
        });
        if (bad) return res;
    }

    // Counting sort by source literal into compressed sparse row arrays.
    std::vector<int> head(2 * nvars + 1, 0);
    for (auto [s, t] : arcs) ++head[s + 1];
    for (int i = 0; i < 2 * nvars; ++i) head[i + 1] += head[i];
    std::vector<int> dst(arcs.size());
    {
        std::vector<int> cursor(head.begin(), head.end() - 1);
        for (auto [s, t] : arcs) dst[cursor[s]++] = t;
    }

    detail::SccFinder scc(head, dst);
    for (int i = 0; i < nvars; ++i)
        if (scc.comp(2 * i) == scc.comp(2 * i + 1)) return res;

    res.yes = true;
    res.colouring.assign(g.id_bound(), 0);
    for (Vertex v : vs) {
        if (var[v] < 0) {
            res.colouring[v] = lists[v].min_colour();
        } else {
            // Components are numbered sinks-first, so the literal with the
            // smaller component id is the one to satisfy.
            bool take_first = scc.comp(2 * var[v]) < scc.comp(2 * var[v] + 1);
            ColourSet l = lists[v];
            int lo = l.min_colour();
            l.remove(lo);
            res.colouring[v] = take_first ? lo : l.min_colour();
        }
    }
    return res;
}

}  // namespace listcol
