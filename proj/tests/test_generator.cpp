#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"

using namespace listcol;

namespace {

std::set<std::pair<Vertex, Vertex>> edge_set(const Graph& g) {
    std::set<std::pair<Vertex, Vertex>> es;
    for (Vertex v : g.vertices())
        for (Vertex u : g.neighbours(v))
            if (u > v) es.insert({v, u});
    return es;
}

}  // namespace

TEST_CASE("generation is a pure function of its options", "[generator]") {
    GenOptions go;
    go.n = 12;
    go.plant_path = true;
    go.forbid = {PatternName::p2p5};
    go.seed = 99;
    Graph a = generate(go);
    Graph b = generate(go);
    CHECK(edge_set(a) == edge_set(b));
    go.seed = 100;
    Graph c = generate(go);
    CHECK(edge_set(a) != edge_set(c));
}

TEST_CASE("forbidden patterns are absent from samples", "[generator]") {
    for (int t = 0; t < 10; ++t) {
        GenOptions go;
        go.n = 11 + t % 3;
        go.plant_path = true;
        go.forbid = {t % 2 == 0 ? PatternName::p2p5 : PatternName::p3p4};
        go.seed = 1234 + t;
        Graph g = generate(go);
        CHECK(g.connected());
        CHECK(!find_induced(g, pattern_graph(go.forbid[0])).has_value());
        CHECK(find_induced_path(g, 7).has_value());
    }
}

TEST_CASE("a planted spine stays an induced seven-path", "[generator]") {
    GenOptions go;
    go.n = 14;
    go.plant_path = true;
    go.seed = 5;
    Graph g = generate(go);
    for (int i = 0; i + 1 < 7; ++i) CHECK(g.has_edge(i, i + 1));
    for (int i = 0; i < 7; ++i)
        for (int j = i + 2; j < 7; ++j) CHECK(!g.has_edge(i, j));
}

TEST_CASE("uniform sampling honours the path requirement", "[generator]") {
    GenOptions go;
    go.n = 10;
    go.density = 0.2;
    go.require_p7 = true;
    go.seed = 17;
    Graph g = generate(go);
    CHECK(g.connected());
    CHECK(find_induced_path(g, 7).has_value());
}

TEST_CASE("impossible constraints exhaust the attempt budget", "[generator]") {
    GenOptions go;
    go.n = 5;
    go.density = 0.0;  // edgeless samples can never be connected
    go.attempts = 100;
    try {
        generate(go);
        FAIL("expected exhaustion");
    } catch (const ExhaustedError& e) {
        CHECK(std::string(e.what()).find("100") != std::string::npos);
    }
    CHECK_THROWS_AS(generate(GenOptions{.n = -1}), UsageError);
    CHECK_THROWS_AS(generate(GenOptions{.n = 5, .plant_path = true}), UsageError);
}

TEST_CASE("random lists respect the palette and emptiness flag", "[generator]") {
    Graph g = path_graph(30);
    Rng rng(8);
    std::vector<ColourSet> lists = random_lists(g, rng, 3);
    for (Vertex v : g.vertices()) {
        CHECK(lists[v].size() >= 1);
        CHECK(lists[v].subset_of(ColourSet::full(3)));
    }
    std::vector<ColourSet> two = random_lists(g, rng, 2);
    for (Vertex v : g.vertices()) CHECK(two[v].subset_of(ColourSet::full(2)));

    bool saw_empty = false;
    for (int t = 0; t < 20 && !saw_empty; ++t)
        for (const ColourSet& s : random_lists(g, rng, 3, true))
            if (s.size() == 0) saw_empty = true;
    CHECK(saw_empty);
}

TEST_CASE("random formulas use distinct in-range variables", "[generator]") {
    Rng rng(21);
    NaeFormula f = random_formula(5, 40, rng);
    CHECK(f.n == 5);
    REQUIRE(f.clauses.size() == 40);
    for (const auto& cl : f.clauses) {
        for (int v : cl) {
            CHECK(v >= 1);
            CHECK(v <= 5);
        }
        CHECK(cl[0] != cl[1]);
        CHECK(cl[1] != cl[2]);
        CHECK(cl[0] != cl[2]);
    }
    CHECK_THROWS_AS(random_formula(2, 1, rng), UsageError);
}
