#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <climits>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "colour_set.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "layers.hpp"
#include "oracle.hpp"
#include "rules.hpp"
#include "structure.hpp"
#include "subgraph.hpp"
#include "two_sat.hpp"

namespace listcol {

enum class TargetPattern { automatic, p2p5, p3p4 };

struct SolveOptions {
    TargetPattern h = TargetPattern::automatic;
    bool verify_freeness = false;
    bool trace = false;
    bool parallel = false;
    OracleBudget fallback_budget{};
};

struct SolveStats {
    std::map<std::string, long> counters;

    void bump(const std::string& key, long by = 1) { counters[key] += by; }
    long get(const std::string& key) const {
        auto it = counters.find(key);
        return it == counters.end() ? 0 : it->second;
    }
    void merge(const SolveStats& other) {
        for (const auto& [k, v] : other.counters) counters[k] += v;
    }
};

struct SolveReport {
    bool yes = false;
    Colouring colouring;  // by original vertex id, original colours (when yes)
    SolveStats stats;
    std::vector<std::string> trace;
};

// Decision solver for list 3-colouring on graphs from the two supported
// classes.  The pipeline splits into components, rejects on a K4, anchors an
// induced 7-vertex path, and then branches in seven stages interleaved with
// propagation; graphs with no such path go straight to exhaustive search.
// Structural expectations are checked at every stage; when one fails on an
// unverified input the affected component falls back to exhaustive search, so
// answers stay correct on every input.
class Solver {
  public:
    explicit Solver(SolveOptions opts = {}) : opts_(opts) {}

    SolveReport solve(const Graph& g, const std::vector<ColourSet>& lists) {
        stats_ = SolveStats{};
        trace_.clear();
        next_id_ = 0;
        freeness_confirmed_ = false;

        Instance base;
        base.g = g;
        base.lists = lists;
        base.k = 3;
        base.sync();
        for (Vertex v : base.g.vertices())
            if (!base.lists[v].subset_of(ColourSet::full(3)))
                throw UsageError("vertex " + std::to_string(v) + " has a colour outside 1..3");

        if (opts_.verify_freeness) verify_freeness(base.g);

        SolveReport report;
        Colouring combined(base.g.id_bound(), 0);
        for (const std::vector<Vertex>& comp : base.g.components()) {
            Instance sub;
            std::vector<Vertex> order = comp;  // ascending; sub id = position
            for (Vertex v : order) {
                Vertex s = sub.g.add_vertex();
                (void)s;
            }
            std::vector<Vertex> to_sub(base.g.id_bound(), -1);
            for (std::size_t s = 0; s < order.size(); ++s) to_sub[order[s]] = static_cast<Vertex>(s);
            for (Vertex v : order)
                for (Vertex u : base.g.neighbours(v))
                    if (u > v) sub.g.add_edge(to_sub[v], to_sub[u]);
            sub.k = 3;
            sub.sync();
            for (Vertex v : order) sub.lists[to_sub[v]] = base.lists[v];

            Verdict verdict = solve_component(std::move(sub));
            if (!verdict.yes) {
                report.yes = false;
                report.stats = std::move(stats_);
                report.trace = std::move(trace_);
                return report;
            }
            for (std::size_t s = 0; s < order.size(); ++s) combined[order[s]] = verdict.colouring[s];
        }
        if (!colouring_ok(base.g, base.lists, combined))
            throw std::logic_error("produced certificate failed verification");
        report.yes = true;
        report.colouring = std::move(combined);
        report.stats = std::move(stats_);
        report.trace = std::move(trace_);
        return report;
    }

    SolveReport solve(const Instance& input) {
        if (input.k != 3) throw UsageError("the solver handles exactly three colours");
        return solve(input.g, input.lists);
    }

  private:
    struct Verdict {
        bool yes = false;
        Colouring colouring;  // component-id space, original colours
    };

    SolveOptions opts_;
    SolveStats stats_;
    std::vector<std::string> trace_;
    long next_id_ = 0;
    bool freeness_confirmed_ = false;

    static constexpr std::array<std::pair<int, int>, 15> kPairs{
        {{1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {3, 5},
         {3, 6}, {3, 7}, {4, 6}, {4, 7}, {5, 7}}};

    long fresh_id() { return next_id_++; }

    void trace_event(const char* tag, long parent, std::size_t children) {
        if (opts_.trace && !opts_.parallel)
            trace_.push_back(std::string(tag) + " parent=" + std::to_string(parent) +
                             " children=" + std::to_string(children));
        stats_.bump(std::string(tag) + "-events");
        stats_.bump(std::string(tag) + "-children", static_cast<long>(children));
    }

    void verify_freeness(const Graph& g) {
        auto witness_str = [&](const std::vector<Vertex>& w) {
            std::string s;
            for (Vertex v : w) s += " " + std::to_string(v + 1);
            return s;
        };
        auto try_pattern = [&](PatternName p) { return find_induced(g, pattern_graph(p)); };
        if (opts_.h == TargetPattern::p2p5 || opts_.h == TargetPattern::automatic) {
            auto w = try_pattern(PatternName::p2p5);
            if (!w) {
                freeness_confirmed_ = true;
                return;
            }
            if (opts_.h == TargetPattern::p2p5)
                throw UsageError("input is not P2+P5-free; witness:" + witness_str(*w));
        }
        auto w = try_pattern(PatternName::p3p4);
        if (!w) {
            freeness_confirmed_ = true;
            return;
        }
        throw UsageError("input is not P3+P4-free; witness:" + witness_str(*w));
    }

    static void assign(Instance& inst, Vertex v, int c) {
        ColourSet s;
        s.add(c);
        inst.lists[v] = inst.lists[v] & s;
    }

    static int pinned(const Instance& inst, Vertex v) {
        if (inst.lists[v].size() != 1)
            throw StructureViolation("anchor-colours",
                                     "vertex " + std::to_string(v) + " is not pinned");
        return inst.lists[v].only_colour();
    }

    Verdict finish_yes(const Instance& inst, const Colouring& live) {
        return {true, replay_journal(inst, live)};
    }

    // True when the propagation outcome decided the instance.
    bool settle(const Instance& inst, PropagateResult& pr, Verdict& out) {
        if (pr.status == PropagateStatus::yes) {
            out = finish_yes(inst, pr.colouring);
            return true;
        }
        if (pr.status == PropagateStatus::no) {
            out = {false, {}};
            return true;
        }
        return false;
    }

    Verdict solve_component(Instance inst) {
        Instance snapshot = inst;
        long id = fresh_id();
        try {
            return run_pipeline(inst, id);
        } catch (const StructureViolation&) {
            stats_.bump("fallbacks");
            if (freeness_confirmed_) throw;
            OracleResult r = oracle_solve(snapshot, opts_.fallback_budget);
            if (r.status == OracleStatus::exhausted)
                throw ExhaustedError("fallback search budget exhausted");
            if (r.status == OracleStatus::no) return {false, {}};
            return {true, std::move(r.colouring)};
        }
    }

    Verdict run_pipeline(Instance& inst, long id) {
        if (inst.g.num_vertices() == 0) return {true, {}};
        if (contains_k4(inst.g)) {
            stats_.bump("k4-no");
            return {false, {}};
        }
        auto p7 = find_induced_path(inst.g, 7);
        if (!p7) {
            stats_.bump("p7-free-oracle");
            OracleResult r = oracle_solve(inst, opts_.fallback_budget);
            if (r.status == OracleStatus::exhausted)
                throw ExhaustedError("search budget exhausted on a path-free component");
            if (r.status == OracleStatus::no) return {false, {}};
            return {true, std::move(r.colouring)};
        }
        std::array<Vertex, 7> n0;
        std::copy(p7->begin(), p7->end(), n0.begin());
        inst.n0 = n0;
        return branching_I(inst, id);
    }

    Verdict branching_I(Instance& inst, long id) {
        const std::array<Vertex, 7>& n0 = *inst.n0;
        std::vector<std::array<int, 7>> phis;
        std::array<int, 7> phi{};
        auto enumerate = [&](auto&& self, int pos) -> void {
            if (pos == 7) {
                phis.push_back(phi);
                return;
            }
            inst.lists[n0[pos]].for_each([&](int c) {
                if (pos > 0 && phi[pos - 1] == c) return;
                phi[pos] = c;
                self(self, pos + 1);
            });
        };
        enumerate(enumerate, 0);
        trace_event("BI", id, phis.size());

        if (opts_.parallel && phis.size() >= 2) return branching_I_parallel(inst, phis);

        for (const auto& f : phis) {
            Instance child = inst;
            long cid = fresh_id();
            for (int i = 0; i < 7; ++i) assign(child, n0[i], f[i]);
            Verdict v = child_phase1(std::move(child), cid);
            if (v.yes) return v;
        }
        return {false, {}};
    }

    Verdict branching_I_parallel(const Instance& inst, const std::vector<std::array<int, 7>>& phis) {
        unsigned hw = std::thread::hardware_concurrency();
        std::size_t tasks = std::min<std::size_t>(std::max(1u, hw) > 8 ? 8 : std::max(1u, hw),
                                                  phis.size());
        std::atomic<bool> found{false};
        struct TaskResult {
            std::optional<std::pair<std::size_t, Verdict>> hit;
            SolveStats stats;
        };
        const std::array<Vertex, 7>& n0 = *inst.n0;
        std::vector<std::future<TaskResult>> futures;
        for (std::size_t t = 0; t < tasks; ++t)
            futures.push_back(std::async(std::launch::async, [&, t]() {
                Solver sub(opts_);
                sub.opts_.trace = false;
                sub.opts_.parallel = false;
                sub.freeness_confirmed_ = freeness_confirmed_;
                TaskResult tr;
                for (std::size_t idx = t; idx < phis.size(); idx += tasks) {
                    if (found.load(std::memory_order_relaxed)) break;
                    Instance child = inst;
                    for (int i = 0; i < 7; ++i) assign(child, n0[i], phis[idx][i]);
                    Verdict v = sub.child_phase1(std::move(child), sub.fresh_id());
                    if (v.yes) {
                        tr.hit = {idx, std::move(v)};
                        found.store(true, std::memory_order_relaxed);
                        break;
                    }
                }
                tr.stats = std::move(sub.stats_);
                return tr;
            }));
        std::exception_ptr first_error;
        std::optional<std::pair<std::size_t, Verdict>> best;
        for (auto& fut : futures) {
            try {
                TaskResult tr = fut.get();
                stats_.merge(tr.stats);
                if (tr.hit && (!best || tr.hit->first < best->first)) best = std::move(tr.hit);
            } catch (...) {
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        if (best) return std::move(best->second);
        return {false, {}};
    }

    Verdict child_phase1(Instance child, long id) {
        PropagateResult pr = propagate(child, kExtendedRules);
        Verdict out;
        if (settle(child, pr, out)) return out;
        LayerState ls = compute_layers(child);
        stats_.bump("check-layer-depth");
        check_outer_cliques(child, ls);
        stats_.bump("check-outer-cliques");
        check_deep_layer(child, ls);
        stats_.bump("check-deep-layer");
        check_full_lists_inner(child, ls);
        stats_.bump("check-full-lists-inner");
        return expand_pairs(std::move(child), id, 0);
    }

    Verdict expand_pairs(Instance inst, long id, std::size_t pair_idx) {
        if (pair_idx == kPairs.size()) {
            LayerState ls = compute_layers(inst);
            ActiveState as = compute_active(inst, ls);
            check_pair_property(inst, ls, as);
            stats_.bump("check-pair-property");
            return dispatch_phase3(std::move(inst), id, 0);
        }
        auto [i, j] = kPairs[pair_idx];
        LayerState ls = compute_layers(inst);
        ActiveState as = compute_active(inst, ls);
        std::vector<Vertex> aij = active_pair_set(inst, ls, as, i, j);
        std::vector<Vertex> aji = active_pair_set(inst, ls, as, j, i);
        if (aij.empty() || aji.empty()) return expand_pairs(std::move(inst), id, pair_idx + 1);

        Vertex vi = ls.n0[i - 1], vj = ls.n0[j - 1];
        int ci = pinned(inst, vi), cj = pinned(inst, vj);
        int gamma, delta;
        if (ci == cj) {
            gamma = ci == 1 ? 2 : 1;
            delta = 6 - ci - gamma;
        } else {
            gamma = 6 - ci - cj;
            delta = cj;
        }

        std::size_t n_children = 1 + aij.size() + aij.size() * (aij.size() - 1) / 2;
        trace_event("BII", id, n_children);

        // One chosen vertex of the first set takes the spare colour (or none
        // do); everyone else in the set is forced to the other option.
        auto single_child = [&](Vertex chosen) -> Verdict {
            Instance child = inst;
            long cid = fresh_id();
            for (Vertex x : aij) assign(child, x, x == chosen ? gamma : delta);
            PropagateResult pr = propagate(child, kExtendedRules);
            Verdict out;
            if (settle(child, pr, out)) return out;
            LayerState ls2 = compute_layers(child);
            ActiveState as2 = compute_active(child, ls2);
            if (!active_pair_set(child, ls2, as2, i, j).empty())
                throw StructureViolation("pair-property",
                                         "first pair set survived its colouring branch");
            stats_.bump("check-pair-property");
            return expand_pairs(std::move(child), cid, pair_idx + 1);
        };

        Verdict v = single_child(-1);
        if (v.yes) return v;
        for (Vertex x : aij) {
            v = single_child(x);
            if (v.yes) return v;
        }

        // Two chosen vertices take the spare colour; the opposite pair set is
        // then dealt with by a nested branching on its layer-2 neighbours.
        for (std::size_t p = 0; p < aij.size(); ++p)
            for (std::size_t q = p + 1; q < aij.size(); ++q) {
                Instance child = inst;
                long cid = fresh_id();
                assign(child, aij[p], gamma);
                assign(child, aij[q], gamma);
                PropagateResult pr = propagate(child, kExtendedRules);
                Verdict out;
                if (settle(child, pr, out)) {
                    if (out.yes) return out;
                    continue;
                }
                LayerState ls2 = compute_layers(child);
                ActiveState as2 = compute_active(child, ls2);
                std::vector<Vertex> aji2 = active_pair_set(child, ls2, as2, j, i);
                if (aji2.empty()) {
                    v = expand_pairs(std::move(child), cid, pair_idx + 1);
                    if (v.yes) return v;
                    continue;
                }
                std::vector<Vertex> hub;
                for (Vertex u : as2.a2)
                    for (Vertex w : child.g.neighbours(u))
                        if (std::binary_search(aji2.begin(), aji2.end(), w)) {
                            hub.push_back(u);
                            break;
                        }
                auto nested_child = [&](Vertex special, int colour) -> Verdict {
                    Instance sub = child;
                    long sid = fresh_id();
                    if (special < 0)
                        for (Vertex u : hub) assign(sub, u, cj);
                    else
                        assign(sub, special, colour);
                    PropagateResult pr2 = propagate(sub, kExtendedRules);
                    Verdict out2;
                    if (settle(sub, pr2, out2)) return out2;
                    LayerState ls3 = compute_layers(sub);
                    ActiveState as3 = compute_active(sub, ls3);
                    if (!active_pair_set(sub, ls3, as3, j, i).empty())
                        throw StructureViolation("pair-property",
                                                 "second pair set survived the nested branching");
                    stats_.bump("check-pair-property");
                    return expand_pairs(std::move(sub), sid, pair_idx + 1);
                };
                v = nested_child(-1, 0);
                if (v.yes) return v;
                for (Vertex u : hub)
                    for (int c = 1; c <= 3; ++c) {
                        if (c == cj || !child.lists[u].contains(c)) continue;
                        v = nested_child(u, c);
                        if (v.yes) return v;
                    }
            }
        return {false, {}};
    }

    Verdict dispatch_phase3(Instance inst, long id, int round) {
        // every re-dispatch follows at least one list shrink, so rounds are
        // bounded by the total list mass
        if (round > 3 * static_cast<int>(inst.g.num_vertices()) + 21)
            throw StructureViolation("phase-rounds", "window reduction did not stabilise");
        PropagateResult pr = propagate(inst, kExtendedRules);
        Verdict out;
        if (settle(inst, pr, out)) return out;
        LayerState ls = compute_layers(inst);
        ActiveState as = compute_active(inst, ls);
        check_full_lists_inner(inst, ls);
        stats_.bump("check-full-lists-inner");
        if (as.a2.empty() || as.a1.empty())
            throw StructureViolation("active-missing",
                                     "open instance without a full active structure");
        std::vector<ColourSet> seen;
        for (Vertex w : as.a1) {
            if (inst.lists[w].size() != 2)
                throw StructureViolation("window-lists", "active layer-1 vertex without a 2-list");
            if (std::find(seen.begin(), seen.end(), inst.lists[w]) == seen.end())
                seen.push_back(inst.lists[w]);
        }
        if (seen.size() == 1) return phase4(std::move(inst), id);
        if (seen.size() != 2)
            throw StructureViolation("window-lists", "more than two lists on the active window");

        // Odd path positions cannot carry a privately attached active vertex.
        for (int i : {1, 3, 5, 7}) {
            for (Vertex w : as.a1) {
                if (!inst.g.has_edge(w, ls.n0[i - 1])) continue;
                bool reached = false;
                for (int jj = 1; jj <= 7 && !reached; ++jj)
                    if (jj < i - 1 || jj > i + 1)
                        if (inst.g.has_edge(w, ls.n0[jj - 1])) reached = true;
                if (!reached)
                    throw StructureViolation("odd-position-attachment",
                                             "active vertex attached only around an odd position");
            }
        }
        stats_.bump("check-odd-position");

        // The active window sits on three consecutive path vertices whose
        // outer two share a colour; normalize that pattern to lists {1,2} and
        // {1,3}.
        std::array<bool, 8> touched{};
        for (Vertex w : as.a1)
            for (int p = 1; p <= 7; ++p)
                if (inst.g.has_edge(w, ls.n0[p - 1])) touched[p] = true;
        int lo = 0, hi = 0;
        for (int p = 1; p <= 7; ++p)
            if (touched[p]) {
                if (!lo) lo = p;
                hi = p;
            }
        if (!lo || hi - lo != 2 || !touched[lo + 1] || lo < 1 || hi > 7)
            throw StructureViolation("attachment-window",
                                     "active window is not three consecutive path vertices");
        int mid = lo + 1;
        Vertex vm = ls.n0[mid - 1];
        int cm = pinned(inst, vm);
        int cside = pinned(inst, ls.n0[lo - 1]);
        if (cside != pinned(inst, ls.n0[hi - 1]) || cside == cm)
            throw StructureViolation("attachment-window",
                                     "window colours do not follow the two-outer-one-mid pattern");
        int shared = 6 - cm - cside;
        std::array<int, 6> rename{0, 1, 2, 3, 4, 5};
        rename[shared] = 1;
        rename[cm] = 2;
        rename[cside] = 3;
        inst.apply_renaming(rename);

        std::vector<Vertex> x12, x13;
        ColourSet l12, l13;
        l12.add(1);
        l12.add(2);
        l13.add(1);
        l13.add(3);
        for (Vertex w : as.a1) {
            bool adj_lo = inst.g.has_edge(w, ls.n0[lo - 1]);
            bool adj_mid = inst.g.has_edge(w, vm);
            bool adj_hi = inst.g.has_edge(w, ls.n0[hi - 1]);
            if (inst.lists[w] == l12) {
                if (!adj_lo || !adj_hi || adj_mid)
                    throw StructureViolation("attachment-window",
                                             "outer-list vertex with unexpected window adjacency");
                x12.push_back(w);
            } else if (inst.lists[w] == l13) {
                if (adj_lo || adj_hi || !adj_mid)
                    throw StructureViolation("attachment-window",
                                             "mid-list vertex with unexpected window adjacency");
                x13.push_back(w);
            } else {
                throw StructureViolation("attachment-window",
                                         "active list does not match the window pattern");
            }
        }
        stats_.bump("check-attachment-window");
        if (x12.empty() || x13.empty())
            throw StructureViolation("attachment-window", "window class unexpectedly empty");
        return branching_III(std::move(inst), id, round);
    }

    // Current active window classes, identified by list value.
    static void window_classes(const Instance& inst, const ActiveState& as, std::vector<Vertex>& x12,
                               std::vector<Vertex>& x13) {
        ColourSet l12, l13;
        l12.add(1);
        l12.add(2);
        l13.add(1);
        l13.add(3);
        x12.clear();
        x13.clear();
        for (Vertex w : as.a1) {
            if (inst.lists[w] == l12) x12.push_back(w);
            else if (inst.lists[w] == l13) x13.push_back(w);
        }
    }

    Verdict branching_III(Instance inst, long id, int round) {
        LayerState ls = compute_layers(inst);
        ActiveState as = compute_active(inst, ls);
        std::vector<Vertex> x12, x13;
        window_classes(inst, as, x12, x13);
        trace_event("BIII", id, 1 + x12.size());

        {
            Instance child = inst;
            long cid = fresh_id();
            for (Vertex x : x12) assign(child, x, 2);
            PropagateResult pr = propagate(child, kExtendedRules);
            Verdict out;
            if (settle(child, pr, out)) {
                if (out.yes) return out;
            } else {
                Verdict v = release_and_redispatch(std::move(child), cid, round);
                if (v.yes) return v;
            }
        }
        for (Vertex w : x12) {
            Instance child = inst;
            long cid = fresh_id();
            assign(child, w, 1);
            child.protect(w);
            PropagateResult pr = propagate(child, kExtendedRules);
            Verdict out;
            if (settle(child, pr, out)) {
                if (out.yes) return out;
                continue;
            }
            Verdict v = phase3_child(std::move(child), cid, w, round);
            if (v.yes) return v;
        }
        return {false, {}};
    }

    Verdict phase3_child(Instance inst, long id, Vertex w, int round) {
        LayerState ls = compute_layers(inst);
        ActiveState as = compute_active(inst, ls);
        std::vector<Vertex> x12, x13;
        window_classes(inst, as, x12, x13);

        for (Vertex z : inst.g.neighbours(w))
            if (as.a2_member(z) || std::binary_search(x12.begin(), x12.end(), z) ||
                std::binary_search(x13.begin(), x13.end(), z))
                throw StructureViolation("pivot-shielded",
                                         "kept vertex still adjacent to the active structure");
        stats_.bump("check-pivot-shielded");

        // The mid-list vertices, their full-list neighbours, and layer 3 must
        // split into tiny cliques.
        {
            std::vector<char> in_set(inst.g.id_bound(), 0), in_x13(inst.g.id_bound(), 0);
            std::vector<Vertex> members;
            auto add_member = [&](Vertex v) {
                if (!in_set[v]) {
                    in_set[v] = 1;
                    members.push_back(v);
                }
            };
            for (Vertex y : x13) {
                in_x13[y] = 1;
                add_member(y);
            }
            for (Vertex y : x13)
                for (Vertex u : inst.g.neighbours(y))
                    if (as.a2_member(u)) add_member(u);
            for (Vertex z : ls.n3) add_member(z);
            std::vector<char> done(inst.g.id_bound(), 0);
            for (Vertex start : members) {
                if (done[start]) continue;
                std::vector<Vertex> comp{start};
                done[start] = 1;
                for (std::size_t qi = 0; qi < comp.size(); ++qi)
                    for (Vertex z : inst.g.neighbours(comp[qi]))
                        if (z < static_cast<int>(in_set.size()) && in_set[z] && !done[z]) {
                            done[z] = 1;
                            comp.push_back(z);
                        }
                int n13 = 0, n2 = 0, n3c = 0;
                for (Vertex a : comp) {
                    if (in_x13[a]) ++n13;
                    else if (as.a2_member(a)) ++n2;
                    else ++n3c;
                    for (Vertex b : comp)
                        if (a < b && !inst.g.has_edge(a, b))
                            throw StructureViolation("anchor-cliques",
                                                     "anchor component is not a clique");
                }
                bool lone_deep = comp.size() == 1 && n3c == 1;
                bool anchored = n13 == 1 && n2 <= 2 && n3c == 0;
                if (!lone_deep && !anchored)
                    throw StructureViolation("anchor-cliques",
                                             "anchor component has the wrong composition");
            }
        }
        stats_.bump("check-anchor-cliques");

        for (Vertex s : as.a2)
            for (Vertex t : inst.g.neighbours(s)) {
                if (ls.depth[t] != 2 || inst.g.has_edge(t, w)) continue;
                for (Vertex r : inst.g.neighbours(s))
                    if (std::binary_search(x13.begin(), x13.end(), r) && !inst.g.has_edge(t, r))
                        throw StructureViolation("shared-anchor",
                                                 "layer-2 neighbour misses an anchor vertex");
            }
        stats_.bump("check-shared-anchor");

        if (x12.empty() || x13.empty()) return release_and_redispatch(std::move(inst), id, round);
        return branching_IV(std::move(inst), id, w, round);
    }

    struct AnchorPath {
        std::vector<Vertex> path;       // the 3-vertex induced path
        std::vector<Vertex> to_colour;  // uncoloured path vertices plus the anchor r
    };

    AnchorPath build_anchor_path(const Instance& inst, const LayerState& ls,
                                 const std::vector<Vertex>& x13, Vertex w, Vertex s) {
        auto in_x13 = [&](Vertex z) { return std::binary_search(x13.begin(), x13.end(), z); };
        Vertex r = -1;
        for (Vertex z : inst.g.neighbours(s))
            if (in_x13(z)) {
                if (r >= 0)
                    throw StructureViolation("anchor-path", "two anchor neighbours on one vertex");
                r = z;
            }
        if (r < 0) throw StructureViolation("anchor-path", "anchor neighbour disappeared");
        std::vector<Vertex> cand;
        for (Vertex z : inst.g.neighbours(s))
            if (z != r) cand.push_back(z);
        if (cand.size() < 2)
            throw StructureViolation("anchor-path", "full-list vertex with too few neighbours");
        Vertex t = cand[0], t2 = cand[1];
        for (Vertex z : {t, t2})
            if (in_x13(z) || ls.in_n3(z))
                throw StructureViolation("anchor-path", "companion in the wrong class");
        AnchorPath ap;
        if (!inst.g.has_edge(t, t2)) {
            ap.path = {t, s, t2};
            ap.to_colour = {t, t2, r};
            return ap;
        }
        Vertex tt, other;
        if (!inst.g.has_edge(t, r)) {
            tt = t;
            other = t2;
        } else if (!inst.g.has_edge(t2, r)) {
            tt = t2;
            other = t;
        } else {
            throw StructureViolation("anchor-path", "both companions stick to the anchor");
        }
        if (ls.depth[tt] == 2) {
            if (!inst.g.has_edge(tt, w))
                throw StructureViolation("anchor-path", "layer-2 companion misses the kept vertex");
            ap.path = {s, tt, w};
            ap.to_colour = {tt, r};
            return ap;
        }
        if (ls.depth[tt] != 1)
            throw StructureViolation("anchor-path", "companion in an unexpected layer");
        if (ls.depth[other] != 2 || inst.g.has_edge(other, r) || !inst.g.has_edge(other, w))
            throw StructureViolation("anchor-path", "second companion fails the fallback pattern");
        ap.path = {s, other, w};
        ap.to_colour = {other, r};
        return ap;
    }

    // All joint colourings of the given vertices from their lists, proper on
    // edges among them and against the fixed colours of s (2) and w (1).
    std::vector<std::vector<int>> joint_colourings(const Instance& inst,
                                                   const std::vector<Vertex>& order, Vertex s,
                                                   Vertex w) {
        std::vector<std::vector<int>> out;
        std::vector<int> pick(order.size(), 0);
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == order.size()) {
                out.push_back(pick);
                return;
            }
            Vertex z = order[i];
            inst.lists[z].for_each([&](int c) {
                if (inst.g.has_edge(z, s) && c == 2) return;
                if (w >= 0 && inst.g.has_edge(z, w) && c == 1) return;
                for (std::size_t q = 0; q < i; ++q)
                    if (pick[q] == c && inst.g.has_edge(z, order[q])) return;
                pick[i] = c;
                self(self, i + 1);
            });
        };
        rec(rec, 0);
        return out;
    }

    Verdict branching_IV(Instance inst, long id, Vertex w, int round) {
        LayerState ls = compute_layers(inst);
        ActiveState as = compute_active(inst, ls);
        std::vector<Vertex> x12, x13;
        window_classes(inst, as, x12, x13);
        std::vector<Vertex> hub;
        for (Vertex u : as.a2)
            for (Vertex y : inst.g.neighbours(u))
                if (std::binary_search(x13.begin(), x13.end(), y)) {
                    hub.push_back(u);
                    break;
                }

        std::vector<AnchorPath> paths;
        std::vector<std::vector<std::vector<int>>> phis;
        std::size_t n_children = 1;
        for (Vertex s : hub) {
            AnchorPath ap = build_anchor_path(inst, ls, x13, w, s);
            stats_.bump("check-anchor-path");
            std::sort(ap.to_colour.begin(), ap.to_colour.end());
            std::vector<std::vector<int>> f = joint_colourings(inst, ap.to_colour, s, w);
            n_children += f.size();
            paths.push_back(std::move(ap));
            phis.push_back(std::move(f));
        }
        trace_event("BIV", id, n_children);

        {
            Instance child = inst;
            long cid = fresh_id();
            for (Vertex u : hub) child.lists[u].remove(2);
            PropagateResult pr = propagate(child, kExtendedRules);
            Verdict out;
            if (settle(child, pr, out)) {
                if (out.yes) return out;
            } else {
                Verdict v = after_anchor_branch(std::move(child), cid, round);
                if (v.yes) return v;
            }
        }
        for (std::size_t si = 0; si < hub.size(); ++si) {
            for (const std::vector<int>& phi : phis[si]) {
                Instance child = inst;
                long cid = fresh_id();
                assign(child, hub[si], 2);
                for (std::size_t q = 0; q < phi.size(); ++q)
                    assign(child, paths[si].to_colour[q], phi[q]);
                PropagateResult pr = propagate(child, kExtendedRules);
                Verdict out;
                if (settle(child, pr, out)) {
                    if (out.yes) return out;
                    continue;
                }
                Verdict v = after_anchor_branch(std::move(child), cid, round);
                if (v.yes) return v;
            }
        }
        return {false, {}};
    }

    // Post-state of a Branching-IV child: at most one mid-list vertex may
    // remain; colour it both ways if it does, then release the kept vertex.
    Verdict after_anchor_branch(Instance inst, long id, int round) {
        LayerState ls = compute_layers(inst);
        ActiveState as = compute_active(inst, ls);
        std::vector<Vertex> x12, x13;
        window_classes(inst, as, x12, x13);
        if (x13.size() > 1)
            throw StructureViolation("anchor-count", "more than one mid-list vertex survived");
        stats_.bump("check-anchor-count");
        if (x13.empty()) return release_and_redispatch(std::move(inst), id, round);
        Vertex y = x13[0];
        trace_event("BV", id, inst.lists[y].size());
        std::vector<int> options;
        inst.lists[y].for_each([&](int c) { options.push_back(c); });
        for (int c : options) {
            Instance child = inst;
            long cid = fresh_id();
            assign(child, y, c);
            PropagateResult pr = propagate(child, kExtendedRules);
            Verdict out;
            if (settle(child, pr, out)) {
                if (out.yes) return out;
                continue;
            }
            Verdict v = release_and_redispatch(std::move(child), cid, round);
            if (v.yes) return v;
        }
        return {false, {}};
    }

    Verdict release_and_redispatch(Instance inst, long id, int round) {
        inst.unprotect_all();
        PropagateResult pr = propagate(inst, kExtendedRules);
        Verdict out;
        if (settle(inst, pr, out)) return out;
        return dispatch_phase3(std::move(inst), id, round + 1);
    }

    Verdict phase4(Instance inst, long id) {
        LayerState ls = compute_layers(inst);
        ActiveState as = compute_active(inst, ls);
        check_full_lists_inner(inst, ls);
        stats_.bump("check-full-lists-inner");
        if (as.a2.empty() || as.a1.empty())
            throw StructureViolation("active-missing", "open instance without active structure");
        ColourSet common = inst.lists[as.a1.front()];
        for (Vertex w : as.a1)
            if (!(inst.lists[w] == common) || common.size() != 2)
                throw StructureViolation("uniform-window", "active layer-1 lists are not uniform");
        stats_.bump("check-uniform-window");
        int a = common.min_colour();
        int b = 0;
        common.for_each([&](int c) {
            if (c != a) b = c;
        });
        std::array<int, 6> rename{0, 1, 2, 3, 4, 5};
        rename[a] = 1;
        rename[b] = 2;
        rename[6 - a - b] = 3;
        inst.apply_renaming(rename);

        bool independent = true;
        std::vector<Vertex> outer = ls.n2;
        outer.insert(outer.end(), ls.n3.begin(), ls.n3.end());
        for (Vertex u : outer) {
            for (Vertex z : inst.g.neighbours(u))
                if (ls.depth[z] >= 2) {
                    independent = false;
                    break;
                }
            if (!independent) break;
        }

        bool direct = false;
        switch (opts_.h) {
            case TargetPattern::p2p5:
                if (!independent)
                    throw StructureViolation("outer-independent",
                                             "outer layers are not an independent set");
                direct = true;
                break;
            case TargetPattern::p3p4: direct = false; break;
            case TargetPattern::automatic: direct = independent; break;
        }
        if (direct) {
            stats_.bump("check-outer-independent");
            stats_.bump("phase4-direct");
            for (Vertex u : as.a2) assign(inst, u, 3);
            PropagateResult pr = propagate(inst, kExtendedRules);
            Verdict out;
            if (settle(inst, pr, out)) return out;
            throw StructureViolation("final-2sat", "instance stayed open after the direct finish");
        }
        stats_.bump("phase4-branching");
        inst.phase4 = true;
        return phase4_branchings(std::move(inst), id);
    }

    Verdict phase4_branchings(Instance inst, long id) {
        long prev_active = LONG_MAX;
        for (;;) {
            PropagateResult pr = propagate(inst, kFullRules);
            Verdict out;
            if (settle(inst, pr, out)) return out;
            LayerState ls = compute_layers(inst);
            ActiveState as = compute_active(inst, ls);
            check_full_lists_inner(inst, ls);
            stats_.bump("check-full-lists-inner");
            if (as.a2.empty())
                throw StructureViolation("active-missing", "open instance without active vertices");
            if (static_cast<long>(as.a2.size()) >= prev_active)
                throw StructureViolation("recursion-measure",
                                         "active set failed to shrink between rounds");
            stats_.bump("check-recursion-measure");
            prev_active = static_cast<long>(as.a2.size());

            Vertex u = -1;
            std::size_t best = SIZE_MAX;
            for (Vertex cand : as.a2) {
                std::size_t d1 = 0;
                for (Vertex z : inst.g.neighbours(cand))
                    if (ls.depth[z] == 1) ++d1;
                if (d1 < best) {
                    best = d1;
                    u = cand;
                }
            }
            std::vector<Vertex> bu;
            for (Vertex z : inst.g.neighbours(u))
                if (inst.lists[z].contains(3)) bu.push_back(z);
            if (bu.empty())
                throw StructureViolation("target-set", "pivot has no neighbour offering colour 3");
            for (Vertex z : bu)
                if (ls.depth[z] < 2)
                    throw StructureViolation("target-set", "target vertex outside the outer layers");
            stats_.bump("check-target-set");
            Vertex v = bu.front();

            std::vector<Vertex> auv, avu;
            for (Vertex z : inst.g.neighbours(u))
                if (ls.depth[z] == 1 && z != v && !inst.g.has_edge(z, v)) auv.push_back(z);
            for (Vertex z : inst.g.neighbours(v))
                if (ls.depth[z] == 1 && z != u && !inst.g.has_edge(z, u)) avu.push_back(z);
            if (auv.empty() || avu.empty())
                throw StructureViolation("pair-nonempty", "pivot pair sets must both be inhabited");
            stats_.bump("check-pair-nonempty");

            ColourSet l12;
            l12.add(1);
            l12.add(2);
            Vertex qw = -1, qt = -1, qs = -1, x = -1;
            std::vector<Vertex> path;
            for (Vertex wz : avu) {
                if (!(inst.lists[wz] == l12)) continue;
                for (Vertex tz : auv)
                    if (!inst.g.has_edge(wz, tz)) {
                        qw = wz;
                        qt = tz;
                        break;
                    }
                if (qw >= 0) break;
            }
            if (qw >= 0) {
                x = u;
                path = {qt, u, v, qw};
            } else {
                for (Vertex wz : avu) {
                    for (Vertex tz : auv)
                        if (!inst.g.has_edge(wz, tz)) {
                            qw = wz;
                            qt = tz;
                            break;
                        }
                    if (qw >= 0) break;
                }
                if (qw >= 0) {
                    x = v;
                    path = {qt, u, v, qw};
                } else {
                    std::vector<Vertex> mid = inst.g.common_neighbours(u, v);
                    if (mid.empty())
                        throw StructureViolation("pivot-mediator",
                                                 "pivot pair with no common neighbour");
                    qs = mid.front();
                    qw = avu.front();
                    qt = auv.front();
                    if (inst.g.has_edge(qs, qw) || inst.g.has_edge(qs, qt))
                        throw StructureViolation("pivot-mediator",
                                                 "mediator adjacent to a pair representative");
                    x = v;
                    path = {qs, u, qt, qw};
                }
            }
            for (std::size_t a2i = 0; a2i < path.size(); ++a2i)
                for (std::size_t b2 = a2i + 1; b2 < path.size(); ++b2) {
                    bool want = b2 == a2i + 1;
                    if (inst.g.has_edge(path[a2i], path[b2]) != want)
                        throw StructureViolation("pivot-path", "pivot path is not induced");
                }
            stats_.bump("check-pivot-path");

            std::vector<Vertex> q{qw, qt, u, v};
            if (qs >= 0) q.push_back(qs);
            for (Vertex tz : auv)
                if (tz != qt) {
                    q.push_back(tz);
                    break;
                }
            std::sort(q.begin(), q.end());

            std::vector<std::vector<int>> phis;
            std::vector<int> pick(q.size(), 0);
            auto rec = [&](auto&& self, std::size_t idx) -> void {
                if (idx == q.size()) {
                    phis.push_back(pick);
                    return;
                }
                Vertex z = q[idx];
                inst.lists[z].for_each([&](int c) {
                    if (z == x && c != 3) return;
                    for (std::size_t p = 0; p < idx; ++p)
                        if (pick[p] == c && inst.g.has_edge(z, q[p])) return;
                    pick[idx] = c;
                    self(self, idx + 1);
                });
            };
            rec(rec, 0);
            trace_event("BVI", id, phis.size() + 1);

            for (const std::vector<int>& phi : phis) {
                Instance child = inst;
                long cid = fresh_id();
                for (std::size_t p = 0; p < q.size(); ++p) assign(child, q[p], phi[p]);
                for (Vertex z : q) child.protect(z);
                PropagateResult rp = propagate(child, kRestrictedRules);
                Verdict out2;
                if (settle(child, rp, out2)) {
                    if (out2.yes) return out2;
                    continue;
                }
                {
                    LayerState ls2 = compute_layers(child);
                    ActiveState as2 = compute_active(child, ls2);
                    for (Vertex z : as2.a2) {
                        int a1n = 0;
                        for (Vertex nb : child.g.neighbours(z))
                            if (as2.a1_member(nb)) ++a1n;
                        if (a1n > 1)
                            throw StructureViolation("unique-anchor",
                                                     "active vertex with two window neighbours");
                    }
                    stats_.bump("check-unique-anchor");
                }
                PropagateResult fp = propagate(child, kFullRules);
                if (settle(child, fp, out2)) {
                    if (out2.yes) return out2;
                    continue;
                }
                Verdict v2 = branching_VII(std::move(child), cid);
                if (v2.yes) return v2;
            }

            // Recursive child: pivot target loses colour 3, deactivating u.
            inst.lists[x].remove(3);
            id = fresh_id();
        }
    }

    Verdict branching_VII(Instance inst, long id) {
        LayerState ls = compute_layers(inst);
        ActiveState as = compute_active(inst, ls);
        std::vector<Vertex> anchors;
        std::size_t n_children = 1;
        for (Vertex r : as.a2) {
            Vertex r1 = -1;
            int cnt = 0;
            for (Vertex z : inst.g.neighbours(r))
                if (as.a1_member(z)) {
                    r1 = z;
                    ++cnt;
                }
            if (cnt != 1)
                throw StructureViolation("unique-anchor",
                                         "active vertex without a unique window neighbour");
            anchors.push_back(r1);
            n_children += inst.lists[r1].size();
        }
        stats_.bump("check-unique-anchor");
        trace_event("BVII", id, n_children);

        {
            Instance child = inst;
            for (Vertex z : as.a2) child.lists[z].remove(3);
            PropagateResult pr = propagate(child, kFullRules);
            Verdict out;
            if (settle(child, pr, out)) {
                if (out.yes) return out;
            } else {
                throw StructureViolation("final-2sat", "stripped child stayed open");
            }
        }
        for (std::size_t ri = 0; ri < as.a2.size(); ++ri) {
            Vertex r = as.a2[ri], r1 = anchors[ri];
            std::vector<int> options;
            inst.lists[r1].for_each([&](int c) { options.push_back(c); });
            for (int c1 : options) {
                Instance child = inst;
                assign(child, r, 3);
                assign(child, r1, c1);
                child.protect(r);
                for (Vertex z : child.g.neighbours(r)) child.protect(z);
                PropagateResult pr = propagate(child, kFullRules);
                Verdict out;
                if (settle(child, pr, out)) {
                    if (out.yes) return out;
                    continue;
                }
                throw StructureViolation("final-2sat", "anchored child stayed open");
            }
        }
        return {false, {}};
    }
};

// Dichotomy label for a forbidden pattern on at most seven vertices: list
// 3-colouring restricted to graphs excluding a linear forest is tractable,
// anything else on <= 7 vertices is expected to stay hard.
enum class ClassifyLabel { polynomial_linear_forest, np_complete_expected };

inline ClassifyLabel classify(const Graph& h) {
    if (h.num_vertices() > 7) throw UsageError("classification covers at most seven vertices");
    return h.is_linear_forest() ? ClassifyLabel::polynomial_linear_forest
                                : ClassifyLabel::np_complete_expected;
}

}  // namespace listcol
