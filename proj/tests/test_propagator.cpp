// the merge/separate mirror (EdgeVarMap, MergeState) and the external
// propagator: implications, lazy reasons, pruning, hints, and backtracking

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "gcol/bounds.hpp"
#include "gcol/graph.hpp"
#include "gcol/graphs.hpp"
#include "gcol/oracle.hpp"
#include "gcol/sat/solver.hpp"
#include "gcol/zykov/merge_state.hpp"
#include "gcol/zykov/propagator.hpp"

using namespace gcol;
using namespace gcol::zykov;
using sat::Lit;
using sat::Status;

namespace {

// full relational fingerprint of a MergeState: bag membership plus the
// complete separation matrix
struct Fingerprint {
    std::vector<int> rep;
    std::vector<std::vector<bool>> separated;

    static Fingerprint of(const MergeState& s) {
        const int n = s.num_vertices();
        Fingerprint f;
        f.rep.resize(static_cast<size_t>(n) + 1);
        f.separated.assign(static_cast<size_t>(n) + 1,
                           std::vector<bool>(static_cast<size_t>(n) + 1, false));
        for (int v = 1; v <= n; ++v) {
            f.rep[static_cast<size_t>(v)] = s.rep(v);
            for (int u = 1; u <= n; ++u)
                f.separated[static_cast<size_t>(v)][static_cast<size_t>(u)] = s.separated(v, u);
        }
        return f;
    }
    bool operator==(const Fingerprint&) const = default;
};

// reference model of the merge/separate semantics: union-find over the
// true pairs, separation = some edge or false pair between the two bags
struct ReferenceModel {
    const Graph& g;
    std::vector<int> parent;
    std::vector<VertexPair> false_pairs;

    explicit ReferenceModel(const Graph& graph) : g(graph), parent(graph.num_vertices() + 1) {
        for (int v = 1; v <= g.num_vertices(); ++v)
            parent[static_cast<size_t>(v)] = v;
    }
    int find(int v) { return parent[static_cast<size_t>(v)] == v ? v : find(parent[static_cast<size_t>(v)]); }
    void merge(int u, int v) { parent[static_cast<size_t>(find(u))] = find(v); }

    bool same_bag(int u, int v) { return find(u) == find(v); }
    bool separated(int u, int v) {
        for (int a = 1; a <= g.num_vertices(); ++a)
            for (int b = 1; b <= g.num_vertices(); ++b) {
                if (not same_bag(a, u) or not same_bag(b, v))
                    continue;
                if (g.adjacent(a, b))
                    return true;
                for (const VertexPair& f : false_pairs)
                    if (f == VertexPair(std::min(a, b), std::max(a, b)))
                        return true;
            }
        return false;
    }
};

}  // namespace

TEST_CASE("pair variable numbering on C5") {
    const Graph c5 = cycle_graph(5);
    const EdgeVarMap vars(c5);
    REQUIRE(vars.num_vars() == 5);

    // non-adjacent pairs in lexicographic order
    CHECK(vars.var(1, 3) == 1);
    CHECK(vars.var(1, 4) == 2);
    CHECK(vars.var(2, 4) == 3);
    CHECK(vars.var(2, 5) == 4);
    CHECK(vars.var(3, 5) == 5);

    // symmetric lookup, edges have no variable
    CHECK(vars.var(3, 1) == 1);
    CHECK(vars.var(1, 2) == 0);
    CHECK(vars.var(5, 4) == 0);

    CHECK(vars.pair(1) == VertexPair(1, 3));
    CHECK(vars.pair(5) == VertexPair(3, 5));
    CHECK(vars.is_pair_var(1));
    CHECK(vars.is_pair_var(5));
    CHECK_FALSE(vars.is_pair_var(0));
    CHECK_FALSE(vars.is_pair_var(6));

    CHECK(vars.lit(1, 3, true) == Lit::pos(1));
    CHECK(vars.lit(1, 3, false) == Lit::neg(1));
}

TEST_CASE("merging propagates separations with transitivity reasons") {
    const Graph c5 = cycle_graph(5);
    const EdgeVarMap vars(c5);
    MergeState state(c5, vars);

    std::vector<Implication> out;
    REQUIRE(state.on_assign(2, 5, true, out) == Apply::applied);
    CHECK(state.same_bag(2, 5));
    CHECK(state.separated(2, 4));  // 5 is adjacent to 4
    CHECK(state.separated(3, 5));  // 2 is adjacent to 3

    // exactly the two separations with variables are implied
    REQUIRE(out.size() == 2);
    std::vector<Lit> lits = {out[0].lit, out[1].lit};
    std::sort(lits.begin(), lits.end());
    CHECK(lits[0] == Lit::neg(vars.var(3, 5)));
    CHECK(lits[1] == Lit::neg(vars.var(2, 4)));

    // each reason is binary: the implied literal plus the negated merge
    for (const Implication& imp : out) {
        REQUIRE(imp.reason.size() == 2);
        CHECK(std::find(imp.reason.begin(), imp.reason.end(), imp.lit) != imp.reason.end());
        CHECK(std::find(imp.reason.begin(), imp.reason.end(), Lit::neg(vars.var(2, 5))) !=
              imp.reason.end());
    }
}

TEST_CASE("redundant and conflicting assignments") {
    const Graph c5 = cycle_graph(5);
    const EdgeVarMap vars(c5);
    MergeState state(c5, vars);

    std::vector<Implication> out;
    REQUIRE(state.on_assign(2, 5, true, out) == Apply::applied);
    const Fingerprint before = Fingerprint::of(state);

    // repeating the merge, or asserting an implied separation, is a no-op
    CHECK(state.on_assign(2, 5, true, out) == Apply::redundant);
    CHECK(state.on_assign(2, 4, false, out) == Apply::redundant);
    CHECK(Fingerprint::of(state) == before);

    // contradicting the mirror reports a conflict and leaves it unchanged
    CHECK(state.on_assign(2, 5, false, out) == Apply::conflict);
    CHECK(state.on_assign(2, 4, true, out) == Apply::conflict);
    CHECK(Fingerprint::of(state) == before);
}

TEST_CASE("backtracking restores the exact relational state") {
    const Graph g = erdos_renyi(8, 0.5, 7);
    const EdgeVarMap vars(g);
    REQUIRE(vars.num_vars() >= 4);

    MergeState state(g, vars);
    std::vector<Implication> out;

    const Fingerprint level0 = Fingerprint::of(state);
    state.push_level();
    const VertexPair p1 = vars.pair(1);
    REQUIRE(state.on_assign(p1.u, p1.v, true, out) != Apply::conflict);
    const Fingerprint level1 = Fingerprint::of(state);

    state.push_level();
    const VertexPair p2 = vars.pair(2);
    const VertexPair p3 = vars.pair(3);
    (void)state.on_assign(p2.u, p2.v, false, out);
    (void)state.on_assign(p3.u, p3.v, true, out);
    CHECK(Fingerprint::of(state) != level1);

    state.backtrack_to(1);
    CHECK(state.level() == 1);
    CHECK(Fingerprint::of(state) == level1);

    state.backtrack_to(0);
    CHECK(Fingerprint::of(state) == level0);
}

TEST_CASE("mirror agrees with a brute-force reference model") {
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        const Graph g = erdos_renyi(8, 0.5, seed);
        const EdgeVarMap vars(g);
        MergeState state(g, vars);
        ReferenceModel ref(g);

        std::mt19937_64 rng(seed);
        std::vector<Implication> out;
        for (int step = 0; step < 12 and vars.num_vars() > 0; ++step) {
            const int x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(vars.num_vars()));
            const VertexPair p = vars.pair(x);
            const bool positive = rng() & 1;

            state.push_level();
            out.clear();
            const Apply result = state.on_assign(p.u, p.v, positive, out);
            if (result == Apply::conflict) {
                state.backtrack_to(state.level() - 1);
                continue;
            }
            if (positive)
                ref.merge(p.u, p.v);
            else
                ref.false_pairs.emplace_back(p.u, p.v);

            for (int u = 1; u <= g.num_vertices(); ++u)
                for (int v = u + 1; v <= g.num_vertices(); ++v) {
                    REQUIRE(state.same_bag(u, v) == ref.same_bag(u, v));
                    REQUIRE(state.separated(u, v) == ref.separated(u, v));
                }
        }
    }
}

TEST_CASE("merge chains that close an odd structure refute via the core") {
    // e13 and e35 put 1, 3, 5 into one bag of C5, but 1-5 is an edge
    const Graph c5 = cycle_graph(5);
    const EdgeVarMap vars(c5);
    sat::Solver solver;
    solver.ensure_vars(vars.num_vars());
    ZykovPropagator prop(c5, solver, vars);
    solver.set_propagator(&prop);

    const std::vector<Lit> assumptions = {Lit::pos(vars.var(1, 3)), Lit::pos(vars.var(3, 5))};
    REQUIRE(solver.solve(assumptions) == Status::unsat);
    const std::vector<Lit> core = solver.unsat_core();
    REQUIRE_FALSE(core.empty());
    for (Lit l : core)
        CHECK(std::find(assumptions.begin(), assumptions.end(), l) != assumptions.end());

    // without assumptions the pair variables are free: all-separate works
    CHECK(solver.solve() == Status::sat);
    CHECK(prop.stats().linearity_violations == 0);
    CHECK(prop.stats().unknown_reason_requests == 0);
}

TEST_CASE("budgeted search decides k-colorability through pruning") {
    // no problem clauses at all: the propagator plus its budget selector
    // carry the whole decision
    for (std::uint64_t seed : {7ULL, 11ULL, 23ULL}) {
        const Graph g = erdos_renyi(8, 0.5, seed);
        const int chi = oracle_chromatic(g);
        const EdgeVarMap vars(g);

        for (int k = chi - 1; k <= chi; ++k) {
            if (k < 1)
                continue;
            sat::Solver solver;
            solver.ensure_vars(vars.num_vars());
            const int selector = solver.new_var();

            PropagatorConfig cfg;
            cfg.check_backtrack_snapshots = true;
            ZykovPropagator prop(g, solver, vars, cfg);
            prop.set_budget(k, Lit::pos(selector));
            prop.set_vertex_order(dsatur(g).selection_order);
            solver.set_propagator(&prop);

            const Status st = solver.solve({Lit::neg(selector)});
            CHECK(st == (k >= chi ? Status::sat : Status::unsat));

            CHECK(prop.stats().linearity_violations == 0);
            CHECK(prop.stats().prune_contract_violations == 0);
            CHECK(prop.stats().snapshot_mismatches == 0);
            CHECK(prop.stats().unknown_reason_requests == 0);
            CHECK(solver.stats().reason_contract_violations == 0);
        }
    }
}

TEST_CASE("positive pruning forces merges whose edge branch is hopeless") {
    // separating 3 and 4 would complete K4, one more than the budget of 3
    const Graph g(4, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}});
    const EdgeVarMap vars(g);
    REQUIRE(vars.num_vars() == 1);
    REQUIRE(vars.var(3, 4) == 1);

    sat::Solver solver;
    solver.ensure_vars(1);
    const int selector = solver.new_var();

    std::vector<WitnessRecord> records;
    ZykovPropagator prop(g, solver, vars);
    prop.set_budget(3, Lit::pos(selector));
    prop.set_root_clique({1, 2, 3});
    prop.set_witness_sink([&](const WitnessRecord& r) { records.push_back(r); });
    solver.set_propagator(&prop);

    REQUIRE(solver.solve({Lit::neg(selector)}) == Status::sat);
    CHECK(solver.model_value(Lit::pos(1)));  // 3 and 4 merged
    CHECK(prop.stats().positive_prunes >= 1);

    const auto it = std::find_if(records.begin(), records.end(), [](const WitnessRecord& r) {
        return r.source == WitnessRecord::Source::positive_prune;
    });
    REQUIRE(it != records.end());
    CHECK(it->budget == 3);
    CHECK(it->witness.bound > 3);
    // the witness subgraph includes the forced pair as an edge
    CHECK(std::find(it->witness.edges.begin(), it->witness.edges.end(), VertexPair(3, 4)) !=
          it->witness.edges.end());
}

TEST_CASE("dominated vertices surface as merge decision hints") {
    // star: every leaf's neighborhood {center} is contained in any other
    // leaf's, so leaves are pairwise dominated
    const Graph star(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}});
    const EdgeVarMap vars(star);

    sat::Solver solver;
    solver.ensure_vars(vars.num_vars());

    PropagatorConfig cfg;
    cfg.enable_pruning = false;
    cfg.use_mnts = false;
    cfg.use_dominated_hints = true;
    ZykovPropagator prop(star, solver, vars, cfg);
    solver.set_propagator(&prop);

    REQUIRE(solver.solve() == Status::sat);
    CHECK(prop.stats().decide_hints >= 1);
    CHECK(prop.stats().linearity_violations == 0);
}

TEST_CASE("witness records rebuild into verifiable subgraphs") {
    // in-search witnesses speak about the contracted graph; the recorded
    // vertex and edge lists are self-contained, so the claim is checked by
    // rebuilding the subgraph from the record alone
    int seen = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = erdos_renyi(9, 0.6, seed);
        const int chi = oracle_chromatic(g);
        if (chi < 3)
            continue;
        const EdgeVarMap vars(g);

        sat::Solver solver;
        solver.ensure_vars(vars.num_vars());
        const int selector = solver.new_var();

        std::vector<WitnessRecord> records;
        ZykovPropagator prop(g, solver, vars);
        prop.set_budget(chi - 1, Lit::pos(selector));
        prop.set_vertex_order(dsatur(g).selection_order);
        prop.set_witness_sink([&](const WitnessRecord& r) { records.push_back(r); });
        solver.set_propagator(&prop);

        REQUIRE(solver.solve({Lit::neg(selector)}) == Status::unsat);
        CHECK(prop.stats().prune_contract_violations == 0);

        for (const WitnessRecord& r : records) {
            ++seen;
            CHECK(r.witness.bound > r.budget);
            // host rebuilt from the record's own edges
            int max_v = 0;
            for (int v : r.witness.vertices)
                max_v = std::max(max_v, v);
            const Graph host(max_v, r.witness.edges);
            REQUIRE(verify_witness(host.view(), r.witness));

            if (r.witness.vertices.size() <= 12) {
                std::map<int, int> relabel;
                for (int v : r.witness.vertices)
                    relabel.emplace(v, static_cast<int>(relabel.size()) + 1);
                std::vector<VertexPair> edges;
                for (const VertexPair& e : r.witness.edges)
                    edges.emplace_back(relabel.at(e.u), relabel.at(e.v));
                const Graph h(static_cast<int>(relabel.size()), edges);
                REQUIRE(oracle_chromatic(h) >= r.witness.bound);
            }
        }
    }
    CHECK(seen > 0);
}
