#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "gcol/graph.hpp"
#include "gcol/graphs.hpp"

using namespace gcol;

TEST_CASE("parse a small edge list") {
    std::istringstream in("p edge 3 2\ne 1 2\ne 2 3\n");
    const Graph g = parse_dimacs(in);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.adjacent(1, 2));
    CHECK(g.adjacent(2, 3));
    CHECK_FALSE(g.adjacent(1, 3));
}

TEST_CASE("parse the five-cycle") {
    std::istringstream in("c the five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
    const Graph g = parse_dimacs(in);
    CHECK(g.num_vertices() == 5);
    CHECK(g.num_edges() == 5);
    for (int v = 1; v <= 5; ++v)
        CHECK(g.degree(v) == 2);
}

TEST_CASE("duplicate edges and both orientations collapse") {
    std::istringstream in("p edge 3 4\ne 1 2\ne 2 1\ne 1 2\ne 2 3\n");
    const Graph g = parse_dimacs(in);  // declared m is advisory only
    CHECK(g.num_edges() == 2);
}

TEST_CASE("parse errors") {
    SUBCASE("missing p line") {
        std::istringstream in("e 1 2\n");
        CHECK_THROWS_AS(parse_dimacs(in), std::runtime_error);
    }
    SUBCASE("vertex id out of range") {
        std::istringstream in("p edge 3 1\ne 1 4\n");
        CHECK_THROWS(parse_dimacs(in));
    }
    SUBCASE("self loop") {
        std::istringstream in("p edge 3 1\ne 2 2\n");
        CHECK_THROWS(parse_dimacs(in));
    }
    SUBCASE("non-numeric tokens") {
        std::istringstream in("p edge 3 1\ne one 2\n");
        CHECK_THROWS(parse_dimacs(in));
    }
}

TEST_CASE("write/parse round trip") {
    for (const std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const Graph g = erdos_renyi(12, 0.4, seed);
        std::ostringstream first;
        write_dimacs(g, first);
        std::istringstream back(first.str());
        const Graph h = parse_dimacs(back);
        std::ostringstream second;
        write_dimacs(h, second);
        CHECK(first.str() == second.str());
        CHECK(h.num_vertices() == g.num_vertices());
        CHECK(h.edges() == g.edges());
    }
}

TEST_CASE("random graphs at the probability extremes") {
    CHECK(erdos_renyi(10, 0.0, 7).num_edges() == 0);
    const Graph k6 = erdos_renyi(6, 1.0, 7);
    CHECK(k6.num_edges() == 15);
    CHECK_THROWS(erdos_renyi(5, 1.5, 1));
    CHECK_THROWS(erdos_renyi(5, -0.1, 1));
}

TEST_CASE("random graphs are reproducible") {
    const Graph a = erdos_renyi(20, 0.5, 123);
    const Graph b = erdos_renyi(20, 0.5, 123);
    CHECK(a.edges() == b.edges());
    const Graph c = erdos_renyi(20, 0.5, 124);
    CHECK(a.edges() != c.edges());
}

TEST_CASE("generator output is pinned across builds") {
    // fixed sample so any change to the generator or its seeding shows up
    const Graph g = erdos_renyi(8, 0.5, 42);
    const std::vector<VertexPair> expected{
        {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 8}, {2, 4}, {2, 6}, {2, 7},
        {3, 6}, {3, 7}, {3, 8}, {4, 5}, {4, 8}, {5, 8}, {6, 7},
    };
    CHECK(g.edges() == expected);
}

TEST_CASE("edge count concentrates around the binomial mean") {
    // C(100,2) * 0.5 = 2475, four standard deviations ~ 100
    const Graph g = erdos_renyi(100, 0.5, 42);
    CHECK(g.num_edges() >= 2375);
    CHECK(g.num_edges() <= 2575);
}

TEST_CASE("nonedges enumeration") {
    CHECK(nonedges(complete_graph(4)).empty());

    const std::vector<VertexPair> expected{{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}};
    CHECK(nonedges(cycle_graph(5)) == expected);

    const Graph empty3(3, {});
    CHECK(nonedges(empty3) ==
          std::vector<VertexPair>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("nonedges and edges partition all pairs") {
    for (const std::uint64_t seed : {10, 11, 12}) {
        const Graph g = erdos_renyi(15, 0.3, seed);
        const int pairs = 15 * 14 / 2;
        CHECK(static_cast<int>(nonedges(g).size()) + g.num_edges() == pairs);
    }
}

TEST_CASE("named graphs have the expected shape") {
    CHECK(path_graph(3).num_edges() == 2);
    CHECK(cycle_graph(5).num_edges() == 5);
    CHECK(complete_graph(8).num_edges() == 28);
    const Graph p = petersen_graph();
    CHECK(p.num_vertices() == 10);
    CHECK(p.num_edges() == 15);
    for (int v = 1; v <= 10; ++v)
        CHECK(p.degree(v) == 3);
    const Graph gr = grotzsch_graph();
    CHECK(gr.num_vertices() == 11);
    CHECK(gr.num_edges() == 20);
}

TEST_CASE("coloring helpers") {
    const Graph c5 = cycle_graph(5);
    const Coloring good{0, 1, 2, 1, 2, 3};
    CHECK(is_proper_coloring(c5, good));
    CHECK(num_colors_used(good) == 3);
    const Coloring bad{0, 1, 2, 1, 2, 1};  // vertices 5 and 1 are adjacent
    CHECK_FALSE(is_proper_coloring(c5, bad));
}
