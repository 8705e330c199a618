#pragma once

#include <stdexcept>
#include <vector>

#include "colour_set.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "layers.hpp"
#include "oracle.hpp"
#include "subgraph.hpp"
#include "two_sat.hpp"

namespace listcol {

// Propagation rules 1..13.  Each application either leaves the instance
// untouched, shrinks it (fewer vertices or smaller lists), or settles the
// whole instance.  Rules scan deterministically (ascending vertex ids) and
// apply at the first matching site only.  Every rule is safe: it preserves
// whether a colouring respecting the lists exists, and deletions are journaled
// so a colouring of the reduced instance extends back over them.
enum class RuleResult { no_change, changed, answered_yes, answered_no };

struct RuleOutcome {
    RuleResult result = RuleResult::no_change;
    Colouring colouring;  // live colouring (branch-local colours) when answered_yes
};

using RuleMask = unsigned;

constexpr RuleMask rule_bit(int r) { return 1u << r; }

constexpr RuleMask rules_upto(int r) {
    RuleMask m = 0;
    for (int i = 1; i <= r; ++i) m |= rule_bit(i);
    return m;
}

constexpr RuleMask kBaseRules = rules_upto(10);
constexpr RuleMask kExtendedRules = rules_upto(11);
constexpr RuleMask kFullRules = rules_upto(13);
// Degree-preserving subset used while a freshly coloured vertex set is kept
// in place for structural analysis.
constexpr RuleMask kRestrictedRules = rule_bit(1) | rule_bit(2) | rule_bit(5) | rule_bit(8);

namespace detail {

// Rule 1: a live vertex with an empty list settles the instance negatively.
inline RuleOutcome rule_empty_list(Instance& inst) {
    for (Vertex v : inst.g.vertices())
        if (inst.lists[v].empty()) return {RuleResult::answered_no, {}};
    return {};
}

// Rule 2: once every list has size at most two the instance is decided in
// polynomial time by the implication-graph solver.
inline RuleOutcome rule_two_lists(Instance& inst) {
    for (Vertex v : inst.g.vertices())
        if (inst.lists[v].size() > 2) return {};
    TwoListResult res = two_list_solve(inst.g, inst.lists);
    if (!res.yes) return {RuleResult::answered_no, {}};
    return {RuleResult::answered_yes, std::move(res.colouring)};
}

// Rule 3: a connected component not containing the anchored path is settled
// by exhaustive search, journaled, and deleted.
inline RuleOutcome rule_stray_component(Instance& inst) {
    if (!inst.n0) return {};
    for (const std::vector<Vertex>& comp : inst.g.components()) {
        bool has_anchor = false;
        for (Vertex v : comp)
            if (inst.in_n0(v)) {
                has_anchor = true;
                break;
            }
        if (has_anchor) continue;
        Graph h;
        std::vector<Vertex> to_sub(inst.g.id_bound(), -1);
        for (Vertex v : comp) to_sub[v] = h.add_vertex();
        for (Vertex v : comp)
            for (Vertex u : inst.g.neighbours(v))
                if (u > v && to_sub[u] >= 0) h.add_edge(to_sub[v], to_sub[u]);
        Instance sub;
        sub.g = std::move(h);
        sub.k = inst.k;
        sub.lists.resize(sub.g.id_bound());
        for (Vertex v : comp) sub.lists[to_sub[v]] = inst.lists[v];
        sub.protected_.assign(sub.g.id_bound(), 0);
        OracleResult r = oracle_solve(sub);
        if (r.status == OracleStatus::exhausted)
            throw ExhaustedError("search budget exhausted on a detached component");
        if (r.status == OracleStatus::no) return {RuleResult::answered_no, {}};
        std::vector<std::pair<Vertex, int>> pairs;
        for (Vertex v : comp) pairs.emplace_back(v, inst.external_colour(r.colouring[to_sub[v]]));
        inst.journal.record_component(std::move(pairs));
        for (Vertex v : comp) inst.g.remove_vertex(v);
        return {RuleResult::changed, {}};
    }
    return {};
}

// Rule 4: delete a vertex whose single colour clashes with no neighbour list;
// its colour is recorded and restored at replay.
inline RuleOutcome rule_settled_vertex(Instance& inst) {
    for (Vertex u : inst.g.vertices()) {
        if (inst.is_protected(u) || inst.in_n0(u)) continue;
        if (inst.lists[u].size() != 1) continue;
        int c = inst.lists[u].only_colour();
        bool clash = false;
        for (Vertex w : inst.g.neighbours(u))
            if (inst.lists[w].contains(c)) {
                clash = true;
                break;
            }
        if (clash) continue;
        inst.journal.record_assigned(u, inst.external_colour(c));
        inst.g.remove_vertex(u);
        return {RuleResult::changed, {}};
    }
    return {};
}

// Rule 5: a vertex pinned to one colour removes that colour from every
// neighbour's list.
inline RuleOutcome rule_pinned_neighbour(Instance& inst) {
    for (Vertex u : inst.g.vertices()) {
        if (inst.lists[u].size() != 1) continue;
        int c = inst.lists[u].only_colour();
        for (Vertex w : inst.g.neighbours(u))
            if (inst.lists[w].contains(c)) {
                inst.lists[w].remove(c);
                return {RuleResult::changed, {}};
            }
    }
    return {};
}

// Rule 6: two common neighbours x, y of an edge must receive the same colour
// (with three colours, the edge uses two of them), so their lists meet.
inline RuleOutcome rule_common_pair(Instance& inst) {
    for (Vertex u : inst.g.vertices())
        for (Vertex v : inst.g.neighbours(u)) {
            if (v <= u) continue;
            std::vector<Vertex> common = inst.g.common_neighbours(u, v);
            for (std::size_t i = 0; i < common.size(); ++i)
                for (std::size_t j = i + 1; j < common.size(); ++j) {
                    Vertex x = common[i], y = common[j];
                    if (inst.lists[x] == inst.lists[y]) continue;
                    ColourSet meet = inst.lists[x] & inst.lists[y];
                    inst.lists[x] = meet;
                    inst.lists[y] = meet;
                    return {RuleResult::changed, {}};
                }
        }
    return {};
}

// Rule 7: if u is non-adjacent to v, N(u) is contained in N(v) and v's list
// is strictly inside u's, then u can always copy v's colour.
inline RuleOutcome rule_dominated_list(Instance& inst) {
    for (Vertex u : inst.g.vertices())
        for (Vertex v : inst.g.vertices()) {
            if (v == u || inst.g.has_edge(u, v)) continue;
            if (!inst.lists[v].strict_subset_of(inst.lists[u])) continue;
            bool contained = true;
            for (Vertex w : inst.g.neighbours(u))
                if (!inst.g.has_edge(v, w)) {
                    contained = false;
                    break;
                }
            if (!contained) continue;
            inst.lists[u] = inst.lists[v];
            return {RuleResult::changed, {}};
        }
    return {};
}

// Rule 8: in a triangle u, v, w where u and v draw on only two colours
// between them, both of those colours are spoken for, so w loses them.
inline RuleOutcome rule_triangle(Instance& inst) {
    for (Vertex u : inst.g.vertices())
        for (Vertex v : inst.g.neighbours(u)) {
            if (v <= u) continue;
            ColourSet pair = inst.lists[u] | inst.lists[v];
            if (pair.size() != 2) continue;
            for (Vertex w : inst.g.common_neighbours(u, v)) {
                if ((inst.lists[w] & pair).empty()) continue;
                inst.lists[w] = inst.lists[w].minus(pair);
                return {RuleResult::changed, {}};
            }
        }
    return {};
}

// Rule 9: a colour no neighbour can take is always safe, so pin the smallest
// such colour.
inline RuleOutcome rule_free_colour(Instance& inst) {
    for (Vertex u : inst.g.vertices()) {
        if (inst.lists[u].size() < 2) continue;
        int found = 0;
        inst.lists[u].for_each([&](int c) {
            if (found) return;
            for (Vertex w : inst.g.neighbours(u))
                if (inst.lists[w].contains(c)) return;
            found = c;
        });
        if (!found) continue;
        ColourSet pin;
        pin.add(found);
        inst.lists[u] = pin;
        return {RuleResult::changed, {}};
    }
    return {};
}

// Rule 10: a vertex with more colours than neighbours always has a colour
// left over; delete it and choose the colour at replay time.
inline RuleOutcome rule_more_colours_than_neighbours(Instance& inst) {
    for (Vertex u : inst.g.vertices()) {
        if (inst.is_protected(u) || inst.in_n0(u)) continue;
        if (static_cast<int>(inst.lists[u].size()) <= inst.g.degree(u)) continue;
        inst.journal.record_deferred({u}, {inst.external_set(inst.lists[u])},
                                     {inst.g.neighbours(u)});
        inst.g.remove_vertex(u);
        return {RuleResult::changed, {}};
    }
    return {};
}

// Rule 11: two adjacent depth-3 vertices whose only other neighbour is one
// shared vertex, carrying distinct 2-lists, can be deleted as a pair: any
// colour of the shared neighbour leaves them a joint completion (recovered at
// replay by a two-vertex search).
inline RuleOutcome rule_deep_pair(Instance& inst) {
    if (!inst.n0) return {};
    std::vector<int> dist =
        inst.g.distances_from(std::vector<Vertex>(inst.n0->begin(), inst.n0->end()));
    for (Vertex u : inst.g.vertices()) {
        if (dist[u] != 3 || inst.is_protected(u)) continue;
        for (Vertex v : inst.g.neighbours(u)) {
            if (v <= u || dist[v] != 3 || inst.is_protected(v)) continue;
            if (inst.g.degree(u) != 2 || inst.g.degree(v) != 2) continue;
            Vertex wu = -1, wv = -1;
            for (Vertex w : inst.g.neighbours(u))
                if (w != v) wu = w;
            for (Vertex w : inst.g.neighbours(v))
                if (w != u) wv = w;
            if (wu < 0 || wu != wv) continue;
            if (inst.lists[u].size() != 2 || inst.lists[v].size() != 2) continue;
            if (inst.lists[u] == inst.lists[v]) continue;
            inst.journal.record_deferred(
                {u, v}, {inst.external_set(inst.lists[u]), inst.external_set(inst.lists[v])},
                {inst.g.neighbours(u), inst.g.neighbours(v)});
            inst.g.remove_vertex(u);
            inst.g.remove_vertex(v);
            return {RuleResult::changed, {}};
        }
    }
    return {};
}

// True when some K4 uses vertex w (new edges after a merge are all at w).
inline bool k4_through(const Graph& g, Vertex w) {
    std::vector<Vertex> nw = g.neighbours(w);
    for (std::size_t i = 0; i < nw.size(); ++i)
        for (std::size_t j = i + 1; j < nw.size(); ++j) {
            if (!g.has_edge(nw[i], nw[j])) continue;
            for (Vertex z : g.common_neighbours(nw[i], nw[j]))
                if (z != w && g.has_edge(z, w)) return true;
        }
    return false;
}

// Rule 12: when v keeps a full list yet all its neighbours other than u sit
// inside N(u), those common neighbours must share one colour.  Merge them
// into one vertex carrying the meet of their lists and drop v; v's colour is
// recovered at replay from the colours of u and the merged vertex.  A K4
// through the merged vertex means the instance was negative.
inline RuleOutcome rule_merge_common(Instance& inst) {
    for (Vertex v : inst.g.vertices()) {
        if (inst.lists[v].size() != 3 || inst.is_protected(v) || inst.in_n0(v)) continue;
        for (Vertex u : inst.g.neighbours(v)) {
            bool inside = true;
            for (Vertex w : inst.g.neighbours(v))
                if (w != u && !inst.g.has_edge(u, w)) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            std::vector<Vertex> shared = inst.g.common_neighbours(u, v);
            if (shared.empty()) continue;
            bool blocked = false;
            ColourSet meet = ColourSet::full(inst.k);
            for (Vertex s : shared) {
                if (inst.is_protected(s) || inst.in_n0(s)) blocked = true;
                meet = meet & inst.lists[s];
            }
            if (blocked) continue;
            ColourSet v_ext = inst.external_set(inst.lists[v]);
            inst.g.remove_vertex(v);
            Vertex w = inst.g.identify(shared);
            inst.sync();
            inst.lists[w] = meet;
            inst.journal.record_identified(w, shared, v, u, v_ext);
            if (k4_through(inst.g, w)) return {RuleResult::answered_no, {}};
            return {RuleResult::changed, {}};
        }
    }
    return {};
}

// Rule 13: u holds a full list; a neighbour v confined to N[u] offers only
// colours {q, 3}; and no neighbour of u outside N[v] has colour 3 on its
// list.  Then a colouring giving u colour q could swap to give u colour 3
// instead, so q leaves u's list.
inline RuleOutcome rule_swap_reduction(Instance& inst) {
    LayerState ls = compute_layers(inst);
    ActiveState as = compute_active(inst, ls);
    for (Vertex u : as.a2) {
        for (Vertex v : inst.g.neighbours(u)) {
            if (!inst.lists[v].contains(3)) continue;
            ColourSet rest = inst.lists[v];
            rest.remove(3);
            if (rest.size() != 1) continue;
            int q = rest.only_colour();
            bool inside = true;
            for (Vertex w : inst.g.neighbours(v))
                if (w != u && !inst.g.has_edge(u, w)) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            bool swappable = true;
            for (Vertex w : inst.g.neighbours(u))
                if (w != v && !inst.g.has_edge(w, v) && inst.lists[w].contains(3)) {
                    swappable = false;
                    break;
                }
            if (!swappable) continue;
            inst.lists[u].remove(q);
            return {RuleResult::changed, {}};
        }
    }
    return {};
}

}  // namespace detail

inline RuleOutcome apply_rule(Instance& inst, int r) {
    inst.sync();
    switch (r) {
        case 1: return detail::rule_empty_list(inst);
        case 2: return detail::rule_two_lists(inst);
        case 3: return detail::rule_stray_component(inst);
        case 4: return detail::rule_settled_vertex(inst);
        case 5: return detail::rule_pinned_neighbour(inst);
        case 6: return detail::rule_common_pair(inst);
        case 7: return detail::rule_dominated_list(inst);
        case 8: return detail::rule_triangle(inst);
        case 9: return detail::rule_free_colour(inst);
        case 10: return detail::rule_more_colours_than_neighbours(inst);
        case 11: return detail::rule_deep_pair(inst);
        case 12:
            if (!inst.phase4) throw UsageError("merge rule is only enabled in the final phase");
            return detail::rule_merge_common(inst);
        case 13:
            if (!inst.phase4) throw UsageError("swap rule is only enabled in the final phase");
            return detail::rule_swap_reduction(inst);
        default: throw UsageError("no such rule: " + std::to_string(r));
    }
}

enum class PropagateStatus { open, yes, no };

struct PropagateResult {
    PropagateStatus status = PropagateStatus::open;
    Colouring colouring;  // live colouring (branch-local colours) when yes
    long applications = 0;
};

// Apply the selected rules exhaustively.  Rules 1..10 run round-robin,
// restarting from rule 1 after every change; rules 11..13 each fire only at a
// fixpoint of the earlier rules, and any change restarts the whole cycle.
inline PropagateResult propagate(Instance& inst, RuleMask mask = kBaseRules) {
    inst.sync();
    long limit = 8 + inst.g.num_vertices();
    for (Vertex v : inst.g.vertices()) limit += inst.lists[v].size();
    PropagateResult out;
    for (;;) {
        for (int r = 1; r <= 10; ++r) {
            if (!(mask & rule_bit(r))) continue;
            RuleOutcome oc = apply_rule(inst, r);
            if (oc.result == RuleResult::answered_yes)
                return {PropagateStatus::yes, std::move(oc.colouring), out.applications};
            if (oc.result == RuleResult::answered_no)
                return {PropagateStatus::no, {}, out.applications};
            if (oc.result == RuleResult::changed) {
                if (++out.applications > limit)
                    throw std::logic_error("propagation failed to terminate");
                r = 0;
            }
        }
        bool extra_fired = false;
        for (int r = 11; r <= 13 && !extra_fired; ++r) {
            if (!(mask & rule_bit(r))) continue;
            RuleOutcome oc = apply_rule(inst, r);
            if (oc.result == RuleResult::answered_yes)
                return {PropagateStatus::yes, std::move(oc.colouring), out.applications};
            if (oc.result == RuleResult::answered_no)
                return {PropagateStatus::no, {}, out.applications};
            if (oc.result == RuleResult::changed) {
                if (++out.applications > limit)
                    throw std::logic_error("propagation failed to terminate");
                extra_fired = true;
            }
        }
        if (!extra_fired) return out;
    }
}

}  // namespace listcol
