// end-to-end chromatic number solving across the four modes, both search
// orders, incremental and rebuilt solvers, and budgeted interruption

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gcol/driver.hpp"
#include "gcol/graph.hpp"
#include "gcol/graphs.hpp"
#include "gcol/oracle.hpp"

using namespace gcol;
using sat::Status;

namespace {

const std::vector<Mode> kAllModes = {Mode::zykov, Mode::transitivity_only, Mode::full_zykov,
                                     Mode::assignment};

void check_optimal(const Graph& g, const SolveReport& r, int expected_chi) {
    REQUIRE(r.outcome == SolveReport::Outcome::optimal);
    CHECK(r.chi == expected_chi);
    CHECK(r.lb == expected_chi);
    CHECK(r.ub == expected_chi);
    REQUIRE(is_proper_coloring(g, r.coloring));
    CHECK(num_colors_used(r.coloring) == expected_chi);
}

}  // namespace

TEST_CASE("chromatic numbers of named graphs") {
    SolveConfig cfg;
    check_optimal(cycle_graph(5), solve_chromatic(cycle_graph(5), cfg), 3);
    check_optimal(petersen_graph(), solve_chromatic(petersen_graph(), cfg), 3);
    check_optimal(grotzsch_graph(), solve_chromatic(grotzsch_graph(), cfg), 4);
    for (int n = 1; n <= 8; ++n)
        check_optimal(complete_graph(n), solve_chromatic(complete_graph(n), cfg), n);
    check_optimal(Graph(6, {}), solve_chromatic(Graph(6, {}), cfg), 1);
    check_optimal(Graph(0, {}), solve_chromatic(Graph(0, {}), cfg), 0);
    check_optimal(path_graph(6), solve_chromatic(path_graph(6), cfg), 2);
}

TEST_CASE("all modes and search orders agree with the oracle") {
    for (std::uint64_t seed = 1; seed <= 18; ++seed) {
        const int n = 7 + static_cast<int>(seed % 6);
        const double p = (seed % 3 == 0) ? 0.3 : (seed % 3 == 1) ? 0.5 : 0.8;
        const Graph g = erdos_renyi(n, p, 400 + seed);
        const int chi = oracle_chromatic(g);

        for (Mode mode : kAllModes)
            for (SearchOrder order : {SearchOrder::bottom_up, SearchOrder::top_down}) {
                SolveConfig cfg;
                cfg.mode = mode;
                cfg.search = order;
                check_optimal(g, solve_chromatic(g, cfg), chi);
            }
    }
}

TEST_CASE("non-incremental solving matches incremental") {
    for (std::uint64_t seed : {3ULL, 5ULL, 8ULL}) {
        const Graph g = erdos_renyi(11, 0.5, seed);
        const int chi = oracle_chromatic(g);
        for (Mode mode : kAllModes) {
            SolveConfig cfg;
            cfg.mode = mode;
            cfg.incremental = false;
            check_optimal(g, solve_chromatic(g, cfg), chi);
        }
    }
}

TEST_CASE("ablation flags leave the answer unchanged") {
    const Graph g = erdos_renyi(12, 0.5, 77);
    const int chi = oracle_chromatic(g);

    SolveConfig cfg;
    cfg.use_mnts = false;
    check_optimal(g, solve_chromatic(g, cfg), chi);

    cfg = SolveConfig{};
    cfg.use_dominated_hints = false;
    check_optimal(g, solve_chromatic(g, cfg), chi);

    cfg = SolveConfig{};
    cfg.clique_decisions = true;
    check_optimal(g, solve_chromatic(g, cfg), chi);

    cfg = SolveConfig{};
    cfg.check_backtrack_snapshots = true;
    check_optimal(g, solve_chromatic(g, cfg), chi);
}

TEST_CASE("single decision problems") {
    const Graph c5 = cycle_graph(5);
    const Graph k4 = complete_graph(4);

    for (Mode mode : kAllModes) {
        SolveConfig cfg;
        cfg.mode = mode;

        DecideResult r = decide_k(c5, 2, cfg);
        CHECK(r.status == Status::unsat);

        r = decide_k(c5, 3, cfg);
        REQUIRE(r.status == Status::sat);
        REQUIRE(is_proper_coloring(c5, r.coloring));
        CHECK(num_colors_used(r.coloring) <= 3);

        r = decide_k(k4, 3, cfg);
        CHECK(r.status == Status::unsat);

        // k >= n is satisfiable outright
        r = decide_k(c5, 5, cfg);
        REQUIRE(r.status == Status::sat);
        REQUIRE(is_proper_coloring(c5, r.coloring));

        r = decide_k(c5, 0, cfg);
        CHECK(r.status == Status::unsat);
    }

    // edgeless and empty graphs
    SolveConfig cfg;
    CHECK(decide_k(Graph(4, {}), 1, cfg).status == Status::sat);
    CHECK(decide_k(Graph(0, {}), 0, cfg).status == Status::sat);
}

TEST_CASE("decision problems agree with the oracle on random graphs") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const Graph g = erdos_renyi(9, 0.5, 600 + seed);
        const int chi = oracle_chromatic(g);
        for (Mode mode : kAllModes) {
            SolveConfig cfg;
            cfg.mode = mode;
            for (int k = std::max(1, chi - 2); k <= std::min(9, chi + 1); ++k) {
                const DecideResult r = decide_k(g, k, cfg);
                REQUIRE(r.status == (k >= chi ? Status::sat : Status::unsat));
                if (r.status == Status::sat) {
                    REQUIRE(is_proper_coloring(g, r.coloring));
                    REQUIRE(num_colors_used(r.coloring) <= k);
                }
            }
        }
    }
}

TEST_CASE("conflict budget yields bounds instead of an answer") {
    // dense enough that one conflict cannot close the gap
    const Graph g = erdos_renyi(40, 0.5, 3);

    SolveConfig cfg;
    cfg.conflict_budget = 1;
    const SolveReport r = solve_chromatic(g, cfg);

    REQUIRE(r.outcome == SolveReport::Outcome::unknown);
    CHECK(r.lb >= 1);
    CHECK(r.lb <= r.ub);
    // the upper-bound coloring is still a genuine coloring
    REQUIRE(is_proper_coloring(g, r.coloring));
    CHECK(num_colors_used(r.coloring) <= r.ub);
}

TEST_CASE("time budget yields bounds instead of an answer") {
    const Graph g = erdos_renyi(60, 0.5, 4);

    SolveConfig cfg;
    cfg.time_limit_s = 1e-6;
    const SolveReport r = solve_chromatic(g, cfg);

    REQUIRE(r.outcome == SolveReport::Outcome::unknown);
    CHECK(r.lb <= r.ub);
    REQUIRE(is_proper_coloring(g, r.coloring));
    CHECK(num_colors_used(r.coloring) <= r.ub);
}

TEST_CASE("bottom-up runs never flip from sat back to unsat") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Graph g = erdos_renyi(10, 0.6, 800 + seed);

        SolveConfig cfg;
        cfg.probe_all_budgets = true;
        const SolveReport r = solve_chromatic(g, cfg);
        REQUIRE(r.outcome == SolveReport::Outcome::optimal);
        CHECK(r.chi == oracle_chromatic(g));

        bool seen_sat = false;
        for (const KRun& run : r.runs) {
            if (run.status == Status::sat)
                seen_sat = true;
            if (seen_sat)
                CHECK(run.status == Status::sat);
        }
    }
}

TEST_CASE("repeated solves are bit-for-bit deterministic") {
    const Graph g = erdos_renyi(13, 0.5, 99);
    for (Mode mode : kAllModes) {
        SolveConfig cfg;
        cfg.mode = mode;
        const SolveReport a = solve_chromatic(g, cfg);
        const SolveReport b = solve_chromatic(g, cfg);
        CHECK(a.chi == b.chi);
        CHECK(a.coloring == b.coloring);
        REQUIRE(a.runs.size() == b.runs.size());
        for (size_t i = 0; i < a.runs.size(); ++i) {
            CHECK(a.runs[i].k == b.runs[i].k);
            CHECK(a.runs[i].status == b.runs[i].status);
            CHECK(a.runs[i].conflicts == b.runs[i].conflicts);
            CHECK(a.runs[i].decisions == b.runs[i].decisions);
        }
    }
}

TEST_CASE("report bookkeeping is populated") {
    const Graph g = erdos_renyi(12, 0.5, 5);
    SolveConfig cfg;
    const SolveReport r = solve_chromatic(g, cfg);
    REQUIRE(r.outcome == SolveReport::Outcome::optimal);
    CHECK(r.root_clique_size >= 1);
    CHECK(r.root_bound >= r.root_clique_size);
    CHECK(r.dsatur_colors >= r.chi);
    CHECK(r.reduced_n <= 12);
    CHECK(r.seconds >= 0.0);
    for (const KRun& run : r.runs)
        CHECK(run.k >= 1);
}
