#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"
#include "io.hpp"

namespace listcol {

struct OracleBudget {
    long long max_nodes = 10'000'000;
    double max_seconds = 60.0;
};

// Variable-selection policy for the exhaustive search.  Answers are
// independent of the policy; having several lets tests cross-check.
enum class OracleOrder { smallest_list, ascending_id, max_degree_first };

enum class OracleStatus { yes, no, exhausted };

struct OracleResult {
    OracleStatus status = OracleStatus::no;
    Colouring colouring;  // filled on yes
    long long nodes = 0;
};

namespace detail {

struct OracleSearch {
    const Graph& g;
    int k;
    OracleBudget budget;
    OracleOrder order;
    std::vector<ColourSet> lists;
    Colouring col;
    std::vector<Vertex> vs;
    long long nodes = 0;
    bool out_of_budget = false;
    std::chrono::steady_clock::time_point start;

    OracleSearch(const Graph& g_, std::vector<ColourSet> lists_, int k_, OracleBudget b, OracleOrder o)
        : g(g_), k(k_), budget(b), order(o), lists(std::move(lists_)) {
        col.assign(g.id_bound(), 0);
        vs = g.vertices();
        start = std::chrono::steady_clock::now();
    }

    bool budget_spent() {
        if (out_of_budget) return true;
        if (nodes > budget.max_nodes) {
            out_of_budget = true;
        } else if ((nodes & 1023) == 0) {
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (secs > budget.max_seconds) out_of_budget = true;
        }
        return out_of_budget;
    }

    Vertex pick_next() const {
        Vertex best = -1;
        int best_key = 0;
        for (Vertex v : vs) {
            if (col[v] != 0) continue;
            int key;
            switch (order) {
                case OracleOrder::ascending_id: return v;
                case OracleOrder::smallest_list: key = lists[v].size(); break;
                case OracleOrder::max_degree_first: key = -g.degree(v); break;
            }
            if (best == -1 || key < best_key) {
                best = v;
                best_key = key;
            }
        }
        return best;
    }

    // Assign v := c, propagate forced singletons, log removals for undo.
    // Returns false on an emptied list.
    bool assign(Vertex v, int c, std::vector<std::pair<Vertex, int>>& undo_removals,
                std::vector<Vertex>& undo_assigns) {
        col[v] = c;
        undo_assigns.push_back(v);
        std::vector<Vertex> queue{v};
        while (!queue.empty()) {
            Vertex x = queue.back();
            queue.pop_back();
            int xc = col[x];
            for (Vertex u : g.neighbours(x)) {
                if (col[u] != 0) {
                    if (col[u] == xc) return false;
                    continue;
                }
                if (!lists[u].contains(xc)) continue;
                lists[u].remove(xc);
                undo_removals.emplace_back(u, xc);
                if (lists[u].empty()) return false;
                if (lists[u].size() == 1) {
                    col[u] = lists[u].min_colour();
                    undo_assigns.push_back(u);
                    queue.push_back(u);
                }
            }
        }
        return true;
    }

    bool search() {
        if (budget_spent()) return false;
        Vertex v = pick_next();
        if (v == -1) return true;
        ColourSet options = lists[v];
        bool found = false;
        options.for_each([&](int c) {
            if (found || out_of_budget) return;
            ++nodes;
            if (budget_spent()) return;
            std::vector<std::pair<Vertex, int>> undo_removals;
            std::vector<Vertex> undo_assigns;
            if (assign(v, c, undo_removals, undo_assigns) && search()) {
                found = true;
                return;
            }
            for (auto [u, rc] : undo_removals) lists[u].add(rc);
            for (Vertex u : undo_assigns) col[u] = 0;
        });
        return found;
    }
};

}  // namespace detail

// Exhaustive list-colouring decision with certificate.  Exhausted is reported
// as a status, never silently converted into an answer.
inline OracleResult brute_list_colour(const Graph& g, const std::vector<ColourSet>& lists, int k,
                                      OracleBudget budget = {},
                                      OracleOrder order = OracleOrder::smallest_list) {
    OracleResult res;
    for (Vertex v : g.vertices()) {
        if (lists[v].empty() || !lists[v].subset_of(ColourSet::full(k))) {
            if (lists[v].empty()) {
                res.status = OracleStatus::no;
                return res;
            }
            throw UsageError("list exceeds palette");
        }
    }
    detail::OracleSearch search(g, lists, k, budget, order);
    bool found = search.search();
    res.nodes = search.nodes;
    if (found) {
        res.status = OracleStatus::yes;
        res.colouring = search.col;
    } else if (search.out_of_budget) {
        res.status = OracleStatus::exhausted;
    } else {
        res.status = OracleStatus::no;
    }
    return res;
}

inline OracleResult oracle_solve(const Instance& inst, OracleBudget budget = {},
                                 OracleOrder order = OracleOrder::smallest_list) {
    return brute_list_colour(inst.g, inst.lists, inst.k, budget, order);
}

struct NaeResult {
    bool satisfiable = false;
    std::vector<char> assignment;  // 1-based, valid when satisfiable
};

// Exhaustive not-all-equal satisfiability for up to 24 variables.
inline NaeResult nae_brute(const NaeFormula& f) {
    if (f.n > 24) throw UsageError("nae_brute supports at most 24 variables");
    NaeResult res;
    for (std::uint32_t m = 0; m < (1u << f.n); ++m) {
        bool ok = true;
        for (auto& cl : f.clauses) {
            bool a = (m >> (cl[0] - 1)) & 1, b = (m >> (cl[1] - 1)) & 1, c = (m >> (cl[2] - 1)) & 1;
            if (a == b && b == c) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.satisfiable = true;
            res.assignment.assign(f.n + 1, 0);
            for (int i = 1; i <= f.n; ++i) res.assignment[i] = (m >> (i - 1)) & 1;
            return res;
        }
    }
    return res;
}

}  // namespace listcol
