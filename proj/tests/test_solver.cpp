#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace listcol;
using testutil::anchored_outer_fixture;
using testutil::cs;
using testutil::deep_pair_fixture;
using testutil::DeepFixture;
using testutil::full_lists;
using testutil::make_listed;
using testutil::uniform_window_fixture;

TEST_CASE("a free-standing seven-path spawns every proper path colouring", "[solver]") {
    Graph g = path_graph(7);
    SolveOptions opts;
    opts.trace = true;
    Solver solver(opts);
    SolveReport rep = solver.solve(g, full_lists(g));
    CHECK(rep.yes);
    CHECK(colouring_ok(g, full_lists(g), rep.colouring));
    CHECK(rep.stats.get("BI-events") == 1);
    CHECK(rep.stats.get("BI-children") == 192);
    REQUIRE(!rep.trace.empty());
    CHECK(rep.trace.front() == "BI parent=0 children=192");
}

TEST_CASE("restricted anchor lists shrink the first branching", "[solver]") {
    Graph g = path_graph(7);
    std::vector<ColourSet> lists = full_lists(g);
    lists[0] = cs({1});
    lists[3] = cs({2, 3});
    Solver solver;
    SolveReport rep = solver.solve(g, lists);
    CHECK(rep.yes);
    CHECK(rep.stats.get("BI-children") < 192);
    CHECK(rep.stats.get("BI-children") > 0);
}

TEST_CASE("a clique on four vertices is refused immediately", "[solver]") {
    Graph g = complete_graph(4);
    Solver solver;
    SolveReport rep = solver.solve(g, full_lists(g));
    CHECK(!rep.yes);
    CHECK(rep.stats.get("k4-no") == 1);
}

TEST_CASE("short graphs go straight to exhaustive search", "[solver]") {
    Graph g = cycle_graph(6);
    Solver solver;
    SolveReport rep = solver.solve(g, full_lists(g));
    CHECK(rep.yes);
    CHECK(rep.stats.get("p7-free-oracle") == 1);
    CHECK(colouring_ok(g, full_lists(g), rep.colouring));
}

TEST_CASE("degenerate inputs resolve without branching", "[solver]") {
    SECTION("no vertices") {
        Graph g;
        Solver solver;
        SolveReport rep = solver.solve(g, {});
        CHECK(rep.yes);
    }
    SECTION("an empty list forces no") {
        Graph g;
        g.add_vertex();
        Solver solver;
        CHECK(!solver.solve(g, {ColourSet{}}).yes);
    }
    SECTION("isolated vertices pick any listed colour") {
        Graph g;
        g.add_vertex();
        g.add_vertex();
        Solver solver;
        SolveReport rep = solver.solve(g, {cs({2}), cs({1, 3})});
        REQUIRE(rep.yes);
        CHECK(rep.colouring[0] == 2);
    }
}

TEST_CASE("colours outside the palette are rejected", "[solver]") {
    Graph g = path_graph(2);
    Solver solver;
    CHECK_THROWS_AS(solver.solve(g, {cs({1, 4}), cs({1, 2})}), UsageError);
    Instance inst = make_listed(path_graph(2), {cs({1, 2}), cs({1, 2})});
    inst.k = 4;
    CHECK_THROWS_AS(solver.solve(inst), UsageError);
}

TEST_CASE("components are decided independently and merged", "[solver]") {
    SECTION("one bad component sinks the instance") {
        Graph g = complete_graph(3);
        for (int i = 0; i < 4; ++i) g.add_vertex();
        for (int a = 3; a < 7; ++a)
            for (int b = a + 1; b < 7; ++b) g.add_edge(a, b);
        Solver solver;
        CHECK(!solver.solve(g, full_lists(g)).yes);
    }
    SECTION("independent components combine into one certificate") {
        Graph g = complete_graph(3);
        Vertex base = 3;
        for (int i = 0; i < 5; ++i) g.add_vertex();
        for (int i = 0; i < 5; ++i) g.add_edge(base + i, base + (i + 1) % 5);
        Solver solver;
        SolveReport rep = solver.solve(g, full_lists(g));
        REQUIRE(rep.yes);
        CHECK(colouring_ok(g, full_lists(g), rep.colouring));
    }
}

TEST_CASE("freeness verification rejects inputs with a witness", "[solver]") {
    // disjoint union of a two-path and a five-path
    Graph g = path_graph(2);
    Vertex base = 2;
    for (int i = 0; i < 5; ++i) g.add_vertex();
    for (int i = 0; i < 4; ++i) g.add_edge(base + i, base + i + 1);

    SolveOptions strict;
    strict.verify_freeness = true;
    strict.h = TargetPattern::p2p5;
    Solver rejecting(strict);
    try {
        rejecting.solve(g, full_lists(g));
        FAIL("expected a rejection");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("witness:") != std::string::npos);
    }

    // the same graph holds no three-path plus four-path, so automatic
    // detection settles on the other class and accepts
    SolveOptions loose;
    loose.verify_freeness = true;
    loose.h = TargetPattern::automatic;
    Solver accepting(loose);
    SolveReport rep = accepting.solve(g, full_lists(g));
    CHECK(rep.yes);
}

TEST_CASE("repeated runs give identical traces and certificates", "[solver]") {
    GenOptions go;
    go.n = 13;
    go.plant_path = true;
    go.forbid = {PatternName::p2p5};
    go.seed = 77;
    Graph g = generate(go);
    Rng rng(78);
    std::vector<ColourSet> lists = random_lists(g, rng, 3);

    SolveOptions opts;
    opts.trace = true;
    auto run = [&]() {
        Solver solver(opts);
        return solver.solve(g, lists);
    };
    SolveReport a = run();
    SolveReport b = run();
    CHECK(a.yes == b.yes);
    CHECK(a.trace == b.trace);
    CHECK(a.colouring == b.colouring);
    CHECK(a.stats.counters == b.stats.counters);
}

TEST_CASE("parallel and sequential runs agree", "[solver]") {
    int yes_seen = 0, no_seen = 0;
    for (int t = 0; t < 20; ++t) {
        GenOptions go;
        go.n = 10 + t % 4;
        go.plant_path = true;
        go.forbid = {t % 2 == 0 ? PatternName::p2p5 : PatternName::p3p4};
        go.seed = 500 + t;
        Graph g = generate(go);
        Rng rng(900 + t);
        std::vector<ColourSet> lists = random_lists(g, rng, 3);

        Solver seq;
        SolveReport rs = seq.solve(g, lists);
        SolveOptions popt;
        popt.parallel = true;
        Solver par(popt);
        SolveReport rp = par.solve(g, lists);
        CHECK(rs.yes == rp.yes);
        if (rs.yes) {
            ++yes_seen;
            CHECK(colouring_ok(g, lists, rp.colouring));
        } else {
            ++no_seen;
        }
    }
    CHECK(yes_seen > 0);
    CHECK(no_seen > 0);
}

TEST_CASE("answers stay correct outside the supported classes", "[solver]") {
    Rng rng(4242);
    int disagreements = 0;
    for (int t = 0; t < 100; ++t) {
        GenOptions go;
        go.n = rng.uniform(8, 12);
        go.density = 0.15 + 0.05 * rng.uniform(0, 6);
        go.connected = false;
        Graph g = generate(go, rng);
        std::vector<ColourSet> lists = random_lists(g, rng, 3);
        Instance ref = make_listed(g, lists);
        OracleResult r = oracle_solve(ref);
        REQUIRE(r.status != OracleStatus::exhausted);
        Solver solver;
        SolveReport rep = solver.solve(g, lists);
        if (rep.yes != (r.status == OracleStatus::yes)) ++disagreements;
        if (rep.yes) CHECK(colouring_ok(g, lists, rep.colouring));
    }
    CHECK(disagreements == 0);
}

TEST_CASE("verified class members run the full pipeline clean", "[solver]") {
    SolveStats total;
    int solved = 0;
    for (int t = 0; t < 40; ++t) {
        PatternName forb = t % 2 == 0 ? PatternName::p2p5 : PatternName::p3p4;
        GenOptions go;
        go.n = 11 + t % 4;
        go.plant_path = true;
        go.forbid = {forb};
        go.seed = 7000 + t;
        Graph g = generate(go);
        std::vector<ColourSet> lists;
        Rng rng(7100 + t);
        if (t % 3 == 0)
            lists = full_lists(g);
        else
            lists = random_lists(g, rng, 3);

        SolveOptions opts;
        opts.verify_freeness = true;
        opts.h = forb == PatternName::p2p5 ? TargetPattern::p2p5 : TargetPattern::p3p4;
        Solver solver(opts);
        SolveReport rep = solver.solve(g, lists);  // throws if a check fails
        total.merge(rep.stats);

        Instance ref = make_listed(g, lists);
        OracleResult r = oracle_solve(ref);
        CHECK(rep.yes == (r.status == OracleStatus::yes));
        if (rep.yes) {
            CHECK(colouring_ok(g, lists, rep.colouring));
            ++solved;
        }
    }
    CHECK(solved > 0);
    CHECK(total.get("fallbacks") == 0);
}

// Random instances nearly always settle during the first branching, so the
// deeper stages are driven by the hand-built fixtures instead.
TEST_CASE("crafted fixtures reach the deep pipeline stages", "[solver]") {
    auto run = [](const DeepFixture& fx) {
        SolveOptions opts;
        opts.verify_freeness = true;
        opts.h = fx.pattern;
        Solver solver(opts);
        SolveReport rep = solver.solve(fx.g, fx.lists);
        Instance ref = make_listed(fx.g, fx.lists);
        OracleResult r = oracle_solve(ref);
        REQUIRE(r.status != OracleStatus::exhausted);
        CHECK(rep.yes == (r.status == OracleStatus::yes));
        if (rep.yes) CHECK(colouring_ok(fx.g, fx.lists, rep.colouring));
        CHECK(rep.stats.get("fallbacks") == 0);
        return rep.stats;
    };

    SECTION("incomparable deep pair drives the pair expansion") {
        SolveStats st = run(deep_pair_fixture());
        CHECK(st.get("check-layer-depth") > 0);
        CHECK(st.get("check-outer-cliques") > 0);
        CHECK(st.get("check-deep-layer") > 0);
        CHECK(st.get("check-full-lists-inner") > 0);
        CHECK(st.get("check-pair-property") > 0);
        CHECK(st.get("BII-events") > 0);
    }
    SECTION("anchored outer components drive the anchor rounds") {
        SolveStats st = run(anchored_outer_fixture());
        CHECK(st.get("check-odd-position") > 0);
        CHECK(st.get("check-attachment-window") > 0);
        CHECK(st.get("check-pivot-shielded") > 0);
        CHECK(st.get("check-anchor-cliques") > 0);
        CHECK(st.get("check-shared-anchor") > 0);
        CHECK(st.get("check-anchor-path") > 0);
        CHECK(st.get("BIII-events") > 0);
        CHECK(st.get("BIV-events") > 0);
    }
    SECTION("uniform window drives the pivot branching") {
        SolveStats st = run(uniform_window_fixture());
        CHECK(st.get("check-uniform-window") > 0);
        CHECK(st.get("check-recursion-measure") > 0);
        CHECK(st.get("check-target-set") > 0);
        CHECK(st.get("check-pair-nonempty") > 0);
        CHECK(st.get("check-pivot-path") > 0);
        CHECK(st.get("phase4-branching") > 0);
        CHECK(st.get("BVI-events") > 0);
    }
}

TEST_CASE("pattern classification follows the linear-forest boundary", "[solver]") {
    CHECK(classify(path_graph(7)) == ClassifyLabel::polynomial_linear_forest);
    CHECK(classify(path_graph(3)) == ClassifyLabel::polynomial_linear_forest);
    Graph claw;
    for (int i = 0; i < 4; ++i) claw.add_vertex();
    claw.add_edge(0, 1);
    claw.add_edge(0, 2);
    claw.add_edge(0, 3);
    CHECK(classify(claw) == ClassifyLabel::np_complete_expected);
    CHECK(classify(cycle_graph(4)) == ClassifyLabel::np_complete_expected);
    Graph forest = path_graph(2);
    forest.add_vertex();
    forest.add_vertex();
    forest.add_edge(2, 3);
    CHECK(classify(forest) == ClassifyLabel::polynomial_linear_forest);
    CHECK_THROWS_AS(classify(path_graph(8)), UsageError);
}
