#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace listcol;

namespace {

// Independent check: enumerate all |pattern|-subsets of host vertices and all
// assignments; exponential but fine for tiny hosts.
bool contains_induced_brute(const Graph& host, const Graph& pattern) {
    auto hv = host.vertices();
    auto pv = pattern.vertices();
    std::size_t pn = pv.size();
    if (hv.size() < pn) return false;
    std::vector<int> idx(pn);
    std::vector<char> used(hv.size(), 0);
    auto rec = [&](auto&& self, std::size_t d) -> bool {
        if (d == pn) return true;
        for (std::size_t i = 0; i < hv.size(); ++i) {
            if (used[i]) continue;
            bool ok = true;
            for (std::size_t p = 0; p < d; ++p)
                if (host.has_edge(hv[i], hv[idx[p]]) != pattern.has_edge(pv[d], pv[p])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            idx[d] = static_cast<int>(i);
            used[i] = 1;
            if (self(self, d + 1)) return true;
            used[i] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace

TEST_CASE("induced path finder basics", "[subgraph]") {
    Graph p = path_graph(7);
    auto w = find_induced_path(p, 7);
    REQUIRE(w);
    CHECK(*w == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6});
    CHECK(!find_induced_path(p, 8));
    Graph c = cycle_graph(7);
    CHECK(find_induced_path(c, 5));
    CHECK(!find_induced_path(c, 7));  // a 7-cycle has no induced 7-path
    CHECK(!find_induced_path(complete_graph(5), 3));
    CHECK_THROWS_AS(find_induced_path(p, 9), UsageError);
}

TEST_CASE("induced path monotonicity", "[subgraph]") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        GenOptions go;
        go.n = 9;
        go.density = 0.3;
        go.connected = false;
        Graph g = generate(go, rng);
        if (!find_induced_path(g, 7)) CHECK(!find_induced_path(g, 8));
    }
}

TEST_CASE("k4 detection", "[subgraph]") {
    CHECK(contains_k4(complete_graph(4)));
    CHECK(contains_k4(complete_graph(6)));
    CHECK(!contains_k4(cycle_graph(5)));
    Graph diamond = complete_graph(4);
    // remove one edge: no K4 remains
    Graph d;
    for (int i = 0; i < 4; ++i) d.add_vertex();
    d.add_edge(0, 1);
    d.add_edge(0, 2);
    d.add_edge(0, 3);
    d.add_edge(1, 2);
    d.add_edge(1, 3);
    CHECK(!contains_k4(d));
}

TEST_CASE("pattern finder agrees with brute enumeration", "[subgraph]") {
    Rng rng(5);
    Graph pat = pattern_graph(PatternName::p2p5);
    Graph pat2 = pattern_graph(PatternName::p3p4);
    int found = 0;
    for (int trial = 0; trial < 150; ++trial) {
        GenOptions go;
        go.n = 8;
        go.density = 0.25 + 0.05 * (trial % 5);
        go.connected = false;
        Graph g = generate(go, rng);
        for (const Graph* p : {&pat, &pat2}) {
            auto w = find_induced(g, *p);
            CHECK(static_cast<bool>(w) == contains_induced_brute(g, *p));
            if (w) {
                ++found;
                CHECK(witness_ok(g, *p, *w));
            }
        }
    }
    CHECK(found > 10);  // the trial mix must exercise both outcomes
}

TEST_CASE("pattern self-embedding and impossibilities", "[subgraph]") {
    Graph p3p5 = pattern_graph(PatternName::p3p5);
    auto self_w = find_induced(p3p5, p3p5);
    REQUIRE(self_w);
    CHECK(witness_ok(p3p5, p3p5, *self_w));
    // a complete graph has no two non-adjacent vertices
    CHECK(!find_induced(complete_graph(7), pattern_graph(PatternName::p2p5)));
}

TEST_CASE("pattern names parse and print", "[subgraph]") {
    for (auto name : {PatternName::p7, PatternName::k4, PatternName::p2p5, PatternName::p3p4,
                      PatternName::p3p5}) {
        auto parsed = parse_pattern(pattern_str(name));
        REQUIRE(parsed);
        CHECK(*parsed == name);
    }
    CHECK(!parse_pattern("p9"));
}
