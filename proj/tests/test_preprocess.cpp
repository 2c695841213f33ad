#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "gcol/graph.hpp"
#include "gcol/graphs.hpp"
#include "gcol/oracle.hpp"
#include "gcol/preprocess.hpp"

using namespace gcol;

TEST_CASE("a path collapses under the low degree rule") {
    const ReductionResult r = reduce(path_graph(3), 2);
    CHECK(r.reduced.num_vertices() == 0);
    CHECK(r.log.records.size() == 3);

    const Coloring c = recover(r.log, Coloring(1, 0), 2);
    CHECK(is_proper_coloring(path_graph(3), c));
    CHECK(num_colors_used(c) == 2);
}

TEST_CASE("a triangle collapses once the bound reaches three") {
    const ReductionResult r = reduce(complete_graph(3), 3);
    CHECK(r.reduced.num_vertices() == 0);

    const Coloring c = recover(r.log, Coloring(1, 0), 3);
    CHECK(is_proper_coloring(complete_graph(3), c));
    // every replayed vertex sees all previous ones
    CHECK(num_colors_used(c) == 3);
}

TEST_CASE("the five-cycle depends on the bound") {
    SUBCASE("bound 2 leaves it untouched") {
        const ReductionResult r = reduce(cycle_graph(5), 2);
        CHECK(r.reduced.num_vertices() == 5);
        CHECK(r.log.records.empty());
        CHECK(r.reduced.edges() == cycle_graph(5).edges());
    }
    SUBCASE("bound 3 removes everything, and recovery still colors it") {
        const ReductionResult r = reduce(cycle_graph(5), 3);
        CHECK(r.reduced.num_vertices() == 0);
        const Coloring c = recover(r.log, Coloring(1, 0), 3);
        CHECK(is_proper_coloring(cycle_graph(5), c));
        CHECK(num_colors_used(c) <= 3);
    }
}

TEST_CASE("dominated leaves of a star fold away") {
    // leaves have identical neighborhoods; adjacent pairs are exempt, so
    // the reduction stops at a single edge
    const Graph star(4, {{1, 2}, {1, 3}, {1, 4}});
    const ReductionResult r = reduce(star, 1);
    CHECK(r.reduced.num_vertices() == 2);
    CHECK(r.reduced.num_edges() == 1);

    const auto dominated = std::count_if(
        r.log.records.begin(), r.log.records.end(),
        [](const ReductionRecord& rec) { return rec.kind == ReductionRecord::Kind::dominated; });
    CHECK(dominated == 2);

    const Coloring c = recover(r.log, Coloring{0, 1, 2}, 2);
    CHECK(is_proper_coloring(star, c));
    CHECK(num_colors_used(c) == 2);
}

TEST_CASE("recovery with an empty log is the identity") {
    const ReductionResult r = reduce(cycle_graph(5), 2);
    const Coloring optimal{0, 1, 2, 1, 2, 3};
    CHECK(recover(r.log, optimal, 3) == optimal);
}

TEST_CASE("reduction preserves the chromatic number above the bound") {
    // chi(original) == max(lb, chi(reduced)) whenever lb <= chi(original)
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 500; ++seed) {
        const int n = 5 + static_cast<int>(seed % 10);  // 5..14
        const double p = (seed % 3 == 0) ? 0.2 : (seed % 3 == 1) ? 0.5 : 0.8;
        const Graph g = erdos_renyi(n, p, seed);
        const int chi = oracle_chromatic(g);
        for (const int lb : {1, chi > 1 ? chi - 1 : 1, chi}) {
            const ReductionResult r = reduce(g, lb);
            const int reduced_chi =
                r.reduced.num_vertices() == 0 ? 0 : oracle_chromatic(r.reduced);
            CHECK(chi == std::max(lb, reduced_chi));
            ++checked;
        }
    }
}

TEST_CASE("recovered colorings are optimal when the bound is valid") {
    for (std::uint64_t seed = 50; seed < 90; ++seed) {
        const int n = 6 + static_cast<int>(seed % 8);
        const Graph g = erdos_renyi(n, 0.5, seed);
        const int chi = oracle_chromatic(g);
        const ReductionResult r = reduce(g, chi);
        Coloring reduced_coloring(1, 0);
        if (r.reduced.num_vertices() > 0) {
            const auto c = oracle_k_colorable(r.reduced, chi);
            REQUIRE(c.has_value());
            reduced_coloring = *c;
        }
        const Coloring full = recover(r.log, reduced_coloring, chi);
        CHECK(is_proper_coloring(g, full));
        CHECK(num_colors_used(full) <= chi);
    }
}

TEST_CASE("reduction reaches a fixpoint") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const Graph g = erdos_renyi(12, 0.35, seed);
        const ReductionResult once = reduce(g, 3);
        const ReductionResult twice = reduce(once.reduced, 3);
        CHECK(twice.log.records.empty());
        CHECK(twice.reduced.num_vertices() == once.reduced.num_vertices());
    }
}

TEST_CASE("recovery reports an exhausted palette") {
    // a bound above the true chromatic number can strand a removed vertex
    // with too few free colors; triangle with lb 3 but palette 2
    const ReductionResult r = reduce(complete_graph(3), 3);
    REQUIRE(r.reduced.num_vertices() == 0);
    CHECK_THROWS(recover(r.log, Coloring(1, 0), 2));
}
