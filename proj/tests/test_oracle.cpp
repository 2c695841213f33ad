#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gcol/graph.hpp"
#include "gcol/graphs.hpp"
#include "gcol/oracle.hpp"

using namespace gcol;

TEST_CASE("chromatic numbers of named graphs") {
    CHECK(oracle_chromatic(cycle_graph(5)) == 3);
    CHECK(oracle_chromatic(complete_graph(6)) == 6);
    CHECK(oracle_chromatic(petersen_graph()) == 3);
    CHECK(oracle_chromatic(grotzsch_graph()) == 4);
    CHECK(oracle_chromatic(path_graph(4)) == 2);
    CHECK(oracle_chromatic(Graph(5, {})) == 1);
}

TEST_CASE("mycielski construction raises the chromatic number by one") {
    Graph g = complete_graph(2);  // chi = 2
    for (int expected = 3; expected <= 4; ++expected) {
        g = mycielskian(g);
        CHECK(oracle_chromatic(g) == expected);
    }
    // one more level exceeds the oracle's size limit; check the shape only:
    // n' = 2n + 1 and m' = 3m + n
    const Graph next = mycielskian(g);
    CHECK(next.num_vertices() == 2 * g.num_vertices() + 1);
    CHECK(next.num_edges() == 3 * g.num_edges() + g.num_vertices());
}

TEST_CASE("k-colorability decisions") {
    const Graph c5 = cycle_graph(5);
    CHECK_FALSE(oracle_k_colorable(c5, 2).has_value());
    const auto three = oracle_k_colorable(c5, 3);
    REQUIRE(three.has_value());
    CHECK(is_proper_coloring(c5, *three));
    CHECK(num_colors_used(*three) <= 3);

    const Graph p = petersen_graph();
    CHECK(oracle_k_colorable(p, 3).has_value());
    CHECK_FALSE(oracle_k_colorable(p, 2).has_value());

    // a rainbow always exists
    for (const std::uint64_t seed : {1, 2, 3}) {
        const Graph g = erdos_renyi(9, 0.5, seed);
        CHECK(oracle_k_colorable(g, 9).has_value());
    }
}

TEST_CASE("chromatic number is the threshold of colorability") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Graph g = erdos_renyi(8, 0.4, seed);
        const int chi = oracle_chromatic(g);
        CHECK(oracle_k_colorable(g, chi).has_value());
        if (chi > 1)
            CHECK_FALSE(oracle_k_colorable(g, chi - 1).has_value());
    }
}

TEST_CASE("backtracking and subset DP implementations agree") {
    CHECK(oracle_chromatic_dp(cycle_graph(5)) == 3);
    CHECK(oracle_chromatic_dp(petersen_graph()) == 3);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 4 + static_cast<int>(seed % 7);  // 4..10
        const double p = (seed % 3 == 0) ? 0.3 : (seed % 3 == 1) ? 0.5 : 0.8;
        const Graph g = erdos_renyi(n, p, seed);
        CHECK(oracle_chromatic(g) == oracle_chromatic_dp(g));
    }
}

TEST_CASE("size guard") {
    CHECK_THROWS(oracle_chromatic(Graph(17, {})));
    CHECK_THROWS(oracle_chromatic_dp(Graph(17, {})));
}
