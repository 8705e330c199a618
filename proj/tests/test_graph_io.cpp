#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"

using namespace listcol;
using testutil::cs;

TEST_CASE("colour sets behave like small sets", "[graph]") {
    ColourSet s;
    CHECK(s.empty());
    s.add(2);
    s.add(5);
    CHECK(s.size() == 2);
    CHECK(s.contains(2));
    CHECK(!s.contains(3));
    CHECK(s.min_colour() == 2);
    s.remove(2);
    CHECK(s.only_colour() == 5);
    CHECK(ColourSet::full(3) == cs({1, 2, 3}));
    CHECK((cs({1, 2}) & cs({2, 3})) == cs({2}));
    CHECK((cs({1}) | cs({3})) == cs({1, 3}));
    CHECK(cs({1, 2, 3}).minus(cs({2})) == cs({1, 3}));
    CHECK(cs({1, 2}).subset_of(cs({1, 2, 3})));
    CHECK(cs({1, 2}).strict_subset_of(cs({1, 2, 3})));
    CHECK(!cs({1, 2}).strict_subset_of(cs({1, 2})));
}

TEST_CASE("graph ids are stable across removals", "[graph]") {
    Graph g;
    for (int i = 0; i < 5; ++i) g.add_vertex();
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    CHECK(g.num_vertices() == 5);
    CHECK(g.num_edges() == 4);
    g.remove_vertex(2);
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 2);
    CHECK(!g.alive(2));
    CHECK(g.has_edge(0, 1));
    CHECK(!g.has_edge(1, 2));
    Vertex v = g.add_vertex();
    CHECK(v == 5);  // ids are never reused
    CHECK(g.degree(v) == 0);
}

TEST_CASE("common neighbours and distances", "[graph]") {
    Graph g = path_graph(5);
    CHECK(g.common_neighbours(0, 2) == std::vector<Vertex>{1});
    auto d = g.distances_from({0});
    CHECK(d[4] == 4);
    auto d2 = g.distances_from({0, 4});
    CHECK(d2[2] == 2);
    CHECK(g.connected());
    Graph two = disjoint_union(path_graph(2), path_graph(3));
    CHECK(!two.connected());
    CHECK(two.components().size() == 2);
}

TEST_CASE("identify merges a set into one vertex", "[graph]") {
    Graph g = path_graph(4);
    Vertex w = g.identify({0, 3});
    CHECK(g.num_vertices() == 3);
    CHECK(g.has_edge(w, 1));
    CHECK(g.has_edge(w, 2));
}

TEST_CASE("linear forest recognition", "[graph]") {
    CHECK(path_graph(7).is_linear_forest());
    CHECK(disjoint_union(path_graph(2), path_graph(5)).is_linear_forest());
    CHECK(disjoint_union(path_graph(3), path_graph(4)).is_linear_forest());
    CHECK(!cycle_graph(4).is_linear_forest());
    Graph claw;
    for (int i = 0; i < 4; ++i) claw.add_vertex();
    for (int i = 1; i < 4; ++i) claw.add_edge(0, i);
    CHECK(!claw.is_linear_forest());
}

TEST_CASE("instance files round-trip", "[io]") {
    Graph g = cycle_graph(4);
    Instance inst = testutil::make_listed(std::move(g), {}, 3);
    inst.lists.assign(inst.g.id_bound(), ColourSet::full(3));
    inst.lists[1] = cs({2});
    inst.lists[3] = cs({1, 3});
    std::stringstream ss;
    write_instance(ss, inst);
    Instance back = read_instance(ss);
    REQUIRE(back.g.num_vertices() == 4);
    REQUIRE(back.g.num_edges() == 4);
    CHECK(back.k == 3);
    CHECK(back.lists[1] == cs({2}));
    CHECK(back.lists[3] == cs({1, 3}));
    CHECK(back.lists[0] == ColourSet::full(3));
    for (auto [u, v] : inst.g.edges()) CHECK(back.g.has_edge(u, v));
}

TEST_CASE("instance reader rejects malformed input", "[io]") {
    auto parse = [](const std::string& text) {
        std::stringstream ss(text);
        return read_instance(ss);
    };
    CHECK_THROWS_AS(parse("e 1 2\n"), UsageError);
    CHECK_THROWS_AS(parse("p 2 1\n"), UsageError);                 // missing edge
    CHECK_THROWS_AS(parse("p 2 1\ne 1 3\n"), UsageError);          // out of range
    CHECK_THROWS_AS(parse("p 2 1\ne 1 1\n"), UsageError);          // self loop
    CHECK_THROWS_AS(parse("p 2 0\nk 9\n"), UsageError);            // palette
    CHECK_THROWS_AS(parse("p 2 0\nl 1 7\n"), UsageError);          // colour range
    CHECK_THROWS_AS(parse("p 2 0\nx 1\n"), UsageError);            // unknown tag
    CHECK_NOTHROW(parse("c hi\np edge 2 1\ne 1 2\n"));             // header variant
}

TEST_CASE("formula files round-trip", "[io]") {
    NaeFormula f;
    f.n = 4;
    f.clauses.push_back({1, 2, 3});
    f.clauses.push_back({2, 3, 4});
    std::stringstream ss;
    write_formula(ss, f);
    NaeFormula back = read_formula(ss);
    CHECK(back.n == 4);
    REQUIRE(back.clauses.size() == 2);
    CHECK(back.clauses[1] == std::array<int, 3>{2, 3, 4});
}

TEST_CASE("seeded rng streams are reproducible", "[rng]") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        auto x = a.next(), y = b.next(), z = c.next();
        all_equal = all_equal && x == y;
        any_diff = any_diff || x != z;
    }
    CHECK(all_equal);
    CHECK(any_diff);
    Rng d(7);
    for (int i = 0; i < 1000; ++i) {
        int v = d.uniform(3, 9);
        REQUIRE(v >= 3);
        REQUIRE(v <= 9);
    }
}

TEST_CASE("connected class enumeration matches known counts", "[enumerate]") {
    // connected unlabeled graphs on 1..6 vertices
    const int expect[] = {1, 1, 2, 6, 21, 112};
    for (int n = 1; n <= 6; ++n) {
        auto classes = testutil::connected_classes(n, n);
        CHECK(static_cast<int>(classes.size()) == expect[n - 1]);
        for (const auto& g : classes) CHECK(g.connected());
    }
}
