#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <optional>
#include <vector>

#include "colour_set.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace listcol {

// Colouring keyed by vertex id; 0 means "no colour".
using Colouring = std::vector<int>;

// Replayable record of the vertices a reduction removed, kept so that a
// colouring of the reduced graph can be extended back over everything that
// was deleted along the way.  Colours in journal entries are always stored in
// the ORIGINAL colour space (renamings applied by the solver are undone at
// record time), so replay composes across branch-local colour renamings.
struct JournalEntry {
    enum class Kind {
        assigned,    // vertex removed with a known colour
        deferred,    // vertices removed whose colours are chosen at replay time
        component,   // whole component removed with a precomputed colouring
        identified,  // set s merged into new vertex w; v removed alongside
    };
    Kind kind;

    // assigned
    Vertex vertex = -1;
    int colour = 0;

    // deferred: colour group[i] from lists[i], properly against nbrs[i]
    std::vector<Vertex> group;
    std::vector<ColourSet> lists;
    std::vector<std::vector<Vertex>> nbrs;

    // component
    std::vector<std::pair<Vertex, int>> comp_colours;

    // identified: every s in group takes w's colour; v takes a colour from
    // v_list distinct from the colours of u and w.
    Vertex merged = -1;  // w
    Vertex removed = -1;  // v
    Vertex kept = -1;     // u
    ColourSet v_list;
};

struct Journal {
    std::vector<JournalEntry> entries;

    void record_assigned(Vertex v, int colour) {
        JournalEntry e;
        e.kind = JournalEntry::Kind::assigned;
        e.vertex = v;
        e.colour = colour;
        entries.push_back(std::move(e));
    }

    void record_deferred(std::vector<Vertex> group, std::vector<ColourSet> lists,
                         std::vector<std::vector<Vertex>> nbrs) {
        JournalEntry e;
        e.kind = JournalEntry::Kind::deferred;
        e.group = std::move(group);
        e.lists = std::move(lists);
        e.nbrs = std::move(nbrs);
        entries.push_back(std::move(e));
    }

    void record_component(std::vector<std::pair<Vertex, int>> colours) {
        JournalEntry e;
        e.kind = JournalEntry::Kind::component;
        e.comp_colours = std::move(colours);
        entries.push_back(std::move(e));
    }

    void record_identified(Vertex w, std::vector<Vertex> s, Vertex v, Vertex u, ColourSet v_list) {
        JournalEntry e;
        e.kind = JournalEntry::Kind::identified;
        e.merged = w;
        e.group = std::move(s);
        e.removed = v;
        e.kept = u;
        e.v_list = v_list;
        entries.push_back(std::move(e));
    }
};

// A list-colouring instance: a graph, a colour list per vertex, and the
// palette size k.  The solver additionally tracks an anchored induced path
// (n0), deletion-protected vertices, a branch-local colour renaming, and the
// journal of removals.
struct Instance {
    Graph g;
    std::vector<ColourSet> lists;  // indexed by vertex id
    int k = 3;

    std::optional<std::array<Vertex, 7>> n0;
    std::vector<char> protected_;

    // perm[c] = colour in the original instance that branch-local colour c
    // stands for.  Identity until a renaming is applied.
    std::array<int, 6> perm{0, 1, 2, 3, 4, 5};

    Journal journal;
    bool phase4 = false;  // enables the two contraction-stage rules

    ColourSet& list(Vertex v) {
        sync();
        return lists[v];
    }
    const ColourSet& list(Vertex v) const {
        assert(v < static_cast<int>(lists.size()));
        return lists[v];
    }

    bool is_protected(Vertex v) const {
        return v < static_cast<int>(protected_.size()) && protected_[v];
    }
    void protect(Vertex v) {
        sync();
        protected_[v] = 1;
    }
    void unprotect_all() { std::fill(protected_.begin(), protected_.end(), 0); }

    bool in_n0(Vertex v) const {
        if (!n0) return false;
        for (Vertex x : *n0)
            if (x == v) return true;
        return false;
    }

    // Grow id-keyed arrays after vertex additions.
    void sync() {
        lists.resize(g.id_bound());
        protected_.resize(g.id_bound(), 0);
    }

    int external_colour(int c) const { return c >= 1 && c <= k ? perm[c] : c; }

    ColourSet external_set(ColourSet s) const {
        ColourSet out;
        s.for_each([&](int c) { out.add(perm[c]); });
        return out;
    }

    // Rename colours so that branch-local colour c becomes rename[c].
    // rename must be a permutation of {1..k}.
    void apply_renaming(const std::array<int, 6>& rename) {
        sync();
        for (Vertex v : g.vertices()) {
            ColourSet fresh;
            lists[v].for_each([&](int c) { fresh.add(rename[c]); });
            lists[v] = fresh;
        }
        std::array<int, 6> next{0, 1, 2, 3, 4, 5};
        for (int c = 1; c <= k; ++c) next[rename[c]] = perm[c];
        perm = next;
    }

    // Verify that n0, when present, is alive and induces a path in order.
    void check_n0() const {
        if (!n0) return;
        for (int i = 0; i < 7; ++i) {
            if (!g.alive((*n0)[i]))
                throw UsageError("anchored path vertex is not alive");
            for (int j = i + 1; j < 7; ++j) {
                bool want = (j == i + 1);
                if (g.has_edge((*n0)[i], (*n0)[j]) != want)
                    throw UsageError("anchored vertices do not induce a path");
            }
        }
    }
};

inline Instance make_instance(Graph g, int k = 3) {
    Instance inst;
    inst.g = std::move(g);
    inst.k = k;
    inst.lists.assign(inst.g.id_bound(), ColourSet::full(k));
    inst.protected_.assign(inst.g.id_bound(), 0);
    return inst;
}

// True when col assigns every live vertex of g a colour from its list and no
// edge joins equal colours.
inline bool colouring_ok(const Graph& g, const std::vector<ColourSet>& lists, const Colouring& col) {
    for (Vertex v : g.vertices()) {
        if (v >= static_cast<int>(col.size()) || col[v] == 0) return false;
        if (!lists[v].contains(col[v])) return false;
        for (Vertex u : g.neighbours(v))
            if (col[u] == col[v]) return false;
    }
    return true;
}

// Extend a colouring of the instance's current live vertices to all vertices
// removed by its journal.  The input colouring is in branch-local colours; the
// result is in the original colour space and covers every id that was ever
// part of this instance (merged helper vertices included).
inline Colouring replay_journal(const Instance& inst, const Colouring& live_col) {
    Colouring col(inst.g.id_bound(), 0);
    for (Vertex v : inst.g.vertices()) {
        assert(v < static_cast<int>(live_col.size()) && live_col[v] != 0);
        col[v] = inst.external_colour(live_col[v]);
    }
    auto& entries = inst.journal.entries;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        const JournalEntry& e = *it;
        switch (e.kind) {
            case JournalEntry::Kind::assigned:
                col[e.vertex] = e.colour;
                break;
            case JournalEntry::Kind::component:
                for (auto [v, c] : e.comp_colours) col[v] = c;
                break;
            case JournalEntry::Kind::identified: {
                int wc = col[e.merged];
                assert(wc != 0);
                for (Vertex s : e.group) col[s] = wc;
                int uc = col[e.kept];
                int vc = 0;
                e.v_list.for_each([&](int c) {
                    if (vc == 0 && c != wc && c != uc) vc = c;
                });
                if (vc == 0) throw StructureViolation("journal-replay", "no colour left for merged-away vertex");
                col[e.removed] = vc;
                break;
            }
            case JournalEntry::Kind::deferred: {
                // Small joint search (groups have size <= 2).
                int n = static_cast<int>(e.group.size());
                std::vector<int> pick(n, 0);
                auto ok_at = [&](int i, int c) {
                    for (Vertex u : e.nbrs[i])
                        if (col[u] == c) return false;
                    for (int j = 0; j < i; ++j)
                        if (pick[j] == c && std::find(e.nbrs[i].begin(), e.nbrs[i].end(), e.group[j]) != e.nbrs[i].end())
                            return false;
                    return true;
                };
                auto rec = [&](auto&& self, int i) -> bool {
                    if (i == n) return true;
                    bool done = false;
                    e.lists[i].for_each([&](int c) {
                        if (done || !ok_at(i, c)) return;
                        pick[i] = c;
                        if (self(self, i + 1)) done = true;
                    });
                    return done;
                };
                if (!rec(rec, 0))
                    throw StructureViolation("journal-replay", "no colour left for removed vertex group");
                for (int i = 0; i < n; ++i) col[e.group[i]] = pick[i];
                break;
            }
        }
    }
    return col;
}

}  // namespace listcol
