#pragma once

// end-to-end chromatic number solving: root bounds, reductions, and the
// per-budget decision loop in four interchangeable modes
//
//   zykov             merge/separate search: the sat solver owns only the
//                     pair variables, the external propagator maintains
//                     transitivity and prunes against the color budget via
//                     clauses carrying a per-budget selector literal
//   transitivity-only propagator maintains transitivity but never prunes;
//                     the budget comes from class-marker clauses and a
//                     totalizer added to the solver
//   full-zykov        everything as clauses, no propagator
//   assignment        classic vertex-color boolean encoding, per budget
//
// in incremental runs one solver persists across budgets: the merge modes
// assume selector / totalizer-output literals to move the bound, so all
// learned clauses carry over

#include <cstdint>
#include <functional>
#include <vector>

#include "gcol/graph.hpp"
#include "gcol/sat/types.hpp"
#include "gcol/zykov/propagator.hpp"

namespace gcol {

enum class Mode { zykov, transitivity_only, full_zykov, assignment };
enum class SearchOrder { bottom_up, top_down };

struct SolveConfig {
    Mode mode = Mode::zykov;
    SearchOrder search = SearchOrder::bottom_up;
    // keep one solver across budgets (merge modes; the assignment
    // encoding depends on the budget, so it always rebuilds)
    bool incremental = true;
    bool use_mnts = true;
    bool use_dominated_hints = true;
    bool clique_decisions = false;
    double time_limit_s = 0.0;         // wall clock for the whole solve; 0 = off
    std::int64_t conflict_budget = 0;  // total conflicts across budgets; 0 = off
    std::uint64_t seed = 1;
    int verbosity = 0;
    // debug instrumentation: per-level state snapshots in the propagator
    bool check_backtrack_snapshots = false;
    // keep deciding budgets above the first satisfiable one (bottom-up
    // only); used to exercise the monotonicity guarantee
    bool probe_all_budgets = false;
    // receives every lower-bound certificate (root and in-search)
    std::function<void(const zykov::WitnessRecord&)> witness_sink;
};

// statistics for one decision problem "is the graph k-colorable"
struct KRun {
    int k = 0;
    sat::Status status = sat::Status::unknown;
    double seconds = 0.0;
    std::int64_t conflicts = 0;
    std::int64_t decisions = 0;
    std::int64_t propagations = 0;
    std::int64_t external_propagations = 0;
    std::int64_t clique_prunes = 0;
    std::int64_t mnts_prunes = 0;
    std::int64_t mycielskian_prunes = 0;
    std::int64_t positive_prunes = 0;
    std::int64_t decide_hints = 0;
    // solver and propagator contract counters summed over the run
    // (reason protocol, prune falsification, per-path linearity,
    // backtrack snapshots); expected to stay zero
    std::int64_t contract_violations = 0;
};

struct SolveReport {
    enum class Outcome { optimal, unknown };

    Outcome outcome = Outcome::unknown;
    int chi = 0;  // meaningful when outcome == optimal
    int lb = 0;   // best proven bounds either way
    int ub = 0;
    // proper coloring of the original graph with ub colors (== chi when
    // optimal); 1-based, index 0 unused
    Coloring coloring;
    int root_clique_size = 0;
    int root_bound = 0;    // clique plus mycielskian extensions
    int dsatur_colors = 0;  // dsatur on the reduced graph
    int reduced_n = 0;
    std::vector<KRun> runs;  // per-budget trajectory in solve order
    double seconds = 0.0;
};

SolveReport solve_chromatic(const Graph& g, const SolveConfig& cfg);

struct DecideResult {
    sat::Status status = sat::Status::unknown;
    Coloring coloring;  // proper k-coloring of the original graph when sat
    KRun run;
    double seconds = 0.0;
};

// single decision problem; reductions run with bound k, certificates from
// bounds can answer without touching the solver
DecideResult decide_k(const Graph& g, int k, const SolveConfig& cfg);

}  // namespace gcol
