#pragma once

// external propagator that runs the merge/separate search inside the sat
// solver. it mirrors every pair-variable assignment into a MergeState,
// returns the implied pair literals with lazily materialized transitivity
// reasons, prunes branches whose contracted graph needs more than the
// color budget (clique / tabu-search clique / mycielskian-style witness,
// each emitted as a clause over the witness edges plus the budget selector
// literal), forces merges whose edge-addition branch a size-k clique rules
// out, and suggests merge decisions for dominated vertices

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gcol/bounds.hpp"
#include "gcol/graph.hpp"
#include "gcol/sat/solver.hpp"
#include "gcol/sat/types.hpp"
#include "gcol/zykov/merge_state.hpp"

namespace gcol::zykov {

struct PropagatorConfig {
    // emit pruning clauses from in-search lower bounds
    bool enable_pruning = true;
    // escalate to tabu search when the greedy clique does not prune
    bool use_mnts = true;
    // suggest e_uv = true when u's contracted neighborhood is a subset
    // of v's
    bool use_dominated_hints = true;
    // decision strategy: grow the last clique toward size k+1 by merging
    // its best outside candidate into a non-neighbor (ablation strategy)
    bool clique_decisions = false;
    // deep-compare the mirror against a per-level snapshot on every
    // backtrack (debug instrumentation; off in production)
    bool check_backtrack_snapshots = false;
    std::uint64_t seed = 1;
    // 0 silent, 1 prune/decision events, 2 every mirrored assignment
    int verbosity = 0;
};

// every lower-bound certificate the propagator acts on, reported through
// the witness sink so a harness can re-verify it offline. for positive
// prunes the witness subgraph includes the forced pair as an edge (the
// bound claim is about the graph after adding it)
struct WitnessRecord {
    enum class Source {
        root_bound,       // produced by the driver before search
        greedy_clique,
        mnts_clique,
        mycielskian,
        positive_prune,
        model_refutation,
    };
    Source source = Source::greedy_clique;
    int budget = 0;  // color budget k the certificate pruned against
    BoundWitness witness;
};

class ZykovPropagator final : public sat::Propagator {
public:
    ZykovPropagator(const Graph& g, sat::Solver& solver, const EdgeVarMap& vars,
                    PropagatorConfig cfg = {});

    // color budget for pruning and the activation literal appended to
    // every pruning clause; the driver assumes the selector false while
    // budget k is active and true once the search moves past it
    void set_budget(int k, Lit selector);
    // clique from preprocessing, mapped through rep() and used to seed
    // every in-search clique call
    void set_root_clique(Clique c);
    // fixed vertex order for the greedy clique heuristic (dsatur
    // selection order of the reduced graph)
    void set_vertex_order(VertexOrder order);
    void set_witness_sink(std::function<void(const WitnessRecord&)> sink);

    const MergeState& state() const { return state_; }

    struct Stats {
        std::int64_t implications = 0;  // pair literals queued by the mirror
        std::int64_t applied_merges = 0;
        std::int64_t applied_separations = 0;
        std::int64_t redundant_assigns = 0;
        std::int64_t contradictions = 0;  // assignments against the mirror
        std::int64_t clique_prunes = 0;
        std::int64_t mnts_prunes = 0;
        std::int64_t mycielskian_prunes = 0;
        std::int64_t positive_prunes = 0;
        std::int64_t decide_hints = 0;
        std::int64_t model_refutations = 0;
        // contract counters, all expected to stay zero
        std::int64_t linearity_violations = 0;
        std::int64_t prune_contract_violations = 0;
        std::int64_t snapshot_mismatches = 0;
        std::int64_t unknown_reason_requests = 0;
    };
    const Stats& stats() const { return stats_; }

    // sat::Propagator interface
    void notify_assign(Lit lit) override;
    void notify_new_level() override;
    void notify_backtrack(int level) override;
    Lit cb_propagate() override;
    Clause cb_add_reason(Lit lit) override;
    Lit cb_decide() override;
    std::optional<Clause> cb_add_external() override;
    bool cb_check_found_model(const std::vector<sat::Value>& model,
                              std::vector<Clause>& refutations) override;

private:
    struct QueueMark {
        size_t tail = 0;  // queue size when the level was opened
        size_t head = 0;  // delivery position when the level was opened
    };

    struct Snapshot {
        std::vector<int> rep;
        std::vector<Bitset> rows;
        Bitset active;
    };

    VertexOrder active_order() const;
    Clique mapped_root_clique() const;
    Clause prune_clause(const BoundWitness& w) const;
    void emit_witness(WitnessRecord::Source source, BoundWitness w, Lit forced = {});
    Lit dominated_hint();
    Lit clique_decision_hint();
    Snapshot take_snapshot() const;
    bool matches_snapshot(const Snapshot& s) const;

    const EdgeVarMap& vars_;
    sat::Solver& solver_;
    PropagatorConfig cfg_;
    MergeState state_;

    int budget_k_ = 0;          // 0 = no budget, pruning and refutation off
    Lit selector_;              // appended positively to every prune clause
    Clique root_clique_;
    VertexOrder vertex_order_;  // falls back to ascending ids when unset
    std::function<void(const WitnessRecord&)> sink_;

    // implication queue in emission order; qhead_ is the next entry to
    // hand to the solver. entries survive in the queue so reasons can be
    // materialized lazily; entry_for_lit_ maps a delivered literal to its
    // entry, keyed by Lit::index()
    std::vector<Implication> queue_;
    size_t qhead_ = 0;
    std::vector<std::int32_t> entry_for_lit_;
    std::vector<QueueMark> queue_marks_;

    // per-path single-application bookkeeping
    std::vector<char> applied_;
    std::vector<int> applied_trail_;
    std::vector<size_t> applied_marks_;

    // representatives whose contracted neighborhood grew since the last
    // dominated-vertex scan; starts full so the first scan sees everything
    Bitset touched_;

    Clique last_clique_;  // most recent in-search clique, for decisions
    bool checked_fixpoint_ = false;
    bool after_backtrack_ = false;  // gates the mycielskian extension
    std::uint64_t mnts_calls_ = 0;

    std::vector<Snapshot> snapshots_;
    Stats stats_;
};

}  // namespace gcol::zykov
