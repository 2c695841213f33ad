#include "gcol/driver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <memory>
#include <utility>

#include "gcol/bounds.hpp"
#include "gcol/encodings.hpp"
#include "gcol/preprocess.hpp"
#include "gcol/sat/solver.hpp"
#include "gcol/sat/totalizer.hpp"

namespace gcol {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

zykov::PropagatorConfig propagator_config(const SolveConfig& cfg) {
    zykov::PropagatorConfig p;
    // only the full merge mode prunes or guides decisions; the
    // transitivity-only ablation runs the mirror and nothing else
    const bool full = cfg.mode == Mode::zykov;
    p.enable_pruning = full;
    p.use_mnts = full and cfg.use_mnts;
    p.use_dominated_hints = full and cfg.use_dominated_hints;
    p.clique_decisions = full and cfg.clique_decisions;
    p.check_backtrack_snapshots = cfg.check_backtrack_snapshots;
    p.seed = cfg.seed;
    p.verbosity = cfg.verbosity;
    return p;
}

Coloring rainbow_coloring(int n) {
    Coloring c(static_cast<size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v)
        c[static_cast<size_t>(v)] = v;
    return c;
}

// one solving mode over the reduced graph. run() decides a single budget;
// in incremental configurations the solver, the propagator and all
// learned clauses persist between budgets
class ModeRunner {
public:
    ModeRunner(const Graph& rg, const SolveConfig& cfg, Clique clique, VertexOrder order)
        : rg_(rg), cfg_(cfg), clique_(std::move(clique)), order_(std::move(order)), vars_(rg) {}

    struct Outcome {
        sat::Status status = sat::Status::unknown;
        Coloring coloring;  // reduced-graph coloring when sat
    };

    Outcome run(int k, double time_left, std::int64_t conflicts_left, KRun& out);

private:
    void setup_merge_solver();
    std::vector<sat::Lit> budget_assumptions(int k) const;

    const Graph& rg_;
    const SolveConfig& cfg_;
    Clique clique_;
    VertexOrder order_;
    zykov::EdgeVarMap vars_;

    std::unique_ptr<sat::Solver> solver_;
    std::unique_ptr<zykov::ZykovPropagator> prop_;
    std::vector<sat::Lit> counter_outputs_;  // o_j true when >= j color classes
    std::vector<int> selector_for_k_;        // budget -> selector var, 0 if none
};

void ModeRunner::setup_merge_solver() {
    solver_ = std::make_unique<sat::Solver>();
    prop_.reset();
    counter_outputs_.clear();
    selector_for_k_.assign(static_cast<size_t>(rg_.num_vertices()) + 2, 0);

    const int n = rg_.num_vertices();
    const int m = vars_.num_vars();
    if (cfg_.mode == Mode::zykov) {
        // no problem clauses at all: the propagator carries the graph and
        // the budget, the solver only learns
        solver_->ensure_vars(m);
        prop_ = std::make_unique<zykov::ZykovPropagator>(rg_, *solver_, vars_,
                                                         propagator_config(cfg_));
        prop_->set_root_clique(clique_);
        prop_->set_vertex_order(order_);
        if (cfg_.witness_sink)
            prop_->set_witness_sink(cfg_.witness_sink);
        solver_->set_propagator(prop_.get());
        return;
    }

    // transitivity-only and full encoding bound the class count by a
    // totalizer; the budget moves through output assumptions
    const int first_class = m + 1;
    int next_free = m + n + 1;
    std::vector<sat::Clause> clauses;
    if (cfg_.mode == Mode::full_zykov)
        clauses = transitivity_clauses(rg_, vars_);
    std::vector<sat::Clause> marker = color_class_clauses(rg_, vars_, first_class);
    clauses.insert(clauses.end(), std::make_move_iterator(marker.begin()),
                   std::make_move_iterator(marker.end()));
    std::vector<sat::Lit> inputs;
    inputs.reserve(static_cast<size_t>(n));
    for (int v = 1; v <= n; ++v)
        inputs.push_back(sat::Lit::pos(first_class + v - 1));
    sat::TotalizerResult tot = sat::totalizer_outputs(inputs, next_free);
    counter_outputs_ = std::move(tot.outputs);

    solver_->ensure_vars(next_free - 1);
    for (sat::Clause& c : clauses)
        solver_->add_clause(std::move(c));
    for (sat::Clause& c : tot.clauses)
        solver_->add_clause(std::move(c));

    if (cfg_.mode == Mode::transitivity_only) {
        prop_ = std::make_unique<zykov::ZykovPropagator>(rg_, *solver_, vars_,
                                                         propagator_config(cfg_));
        solver_->set_propagator(prop_.get());
    }
}

std::vector<sat::Lit> ModeRunner::budget_assumptions(int k) const {
    std::vector<sat::Lit> a;
    if (cfg_.mode == Mode::zykov) {
        // the active budget's selector is false so its pruning clauses
        // bite; smaller budgets (already refuted) are disabled by assuming
        // their selectors true, larger ones (top-down) stay active since a
        // subgraph needing more than j > k colors also needs more than k
        for (int j = 1; j < static_cast<int>(selector_for_k_.size()); ++j) {
            const int s = selector_for_k_[static_cast<size_t>(j)];
            if (s == 0)
                continue;
            a.push_back(j < k ? sat::Lit::pos(s) : sat::Lit::neg(s));
        }
    } else if (k < static_cast<int>(counter_outputs_.size())) {
        a.push_back(-counter_outputs_[static_cast<size_t>(k)]);  // at most k classes
    }
    return a;
}

ModeRunner::Outcome ModeRunner::run(int k, double time_left, std::int64_t conflicts_left,
                                    KRun& out) {
    const double t0 = now_seconds();
    out = KRun{};
    out.k = k;
    Outcome res;
    const int n = rg_.num_vertices();
    if (n == 0 or k >= n) {
        res.status = sat::Status::sat;
        res.coloring = rainbow_coloring(n);
        out.status = res.status;
        out.seconds = now_seconds() - t0;
        return res;
    }

    if (cfg_.mode == Mode::assignment) {
        // the variable layout depends on k, so every budget gets a fresh
        // solver regardless of the incremental flag
        sat::Solver solver;
        const AssignmentEncoding enc = build_assignment(rg_, k, clique_);
        solver.ensure_vars(enc.cnf.num_vars);
        for (const sat::Clause& c : enc.cnf.clauses)
            if (not solver.add_clause(c))
                break;
        if (time_left > 0)
            solver.set_time_budget(time_left);
        if (conflicts_left > 0)
            solver.set_conflict_budget(conflicts_left);
        res.status = solver.okay() ? solver.solve() : sat::Status::unsat;
        if (res.status == sat::Status::sat)
            res.coloring = decode_assignment_model(enc, solver.model(), rg_);
        out.status = res.status;
        out.seconds = now_seconds() - t0;
        out.conflicts = solver.stats().conflicts;
        out.decisions = solver.stats().decisions;
        out.propagations = solver.stats().propagations;
        out.contract_violations = solver.stats().reason_contract_violations;
        return res;
    }

    if (not solver_ or not cfg_.incremental)
        setup_merge_solver();
    if (cfg_.mode == Mode::zykov) {
        if (selector_for_k_[static_cast<size_t>(k)] == 0)
            selector_for_k_[static_cast<size_t>(k)] = solver_->new_var();
        prop_->set_budget(k, sat::Lit::pos(selector_for_k_[static_cast<size_t>(k)]));
    }

    const sat::Solver::Stats s0 = solver_->stats();
    const zykov::ZykovPropagator::Stats p0 =
        prop_ ? prop_->stats() : zykov::ZykovPropagator::Stats{};
    if (time_left > 0)
        solver_->set_time_budget(time_left);
    else
        solver_->set_time_budget(0);
    solver_->set_conflict_budget(conflicts_left > 0 ? conflicts_left : 0);

    res.status = solver_->solve(budget_assumptions(k));
    if (res.status == sat::Status::sat)
        res.coloring = decode_zykov_model(solver_->model(), rg_, vars_, k);

    const sat::Solver::Stats& s1 = solver_->stats();
    out.status = res.status;
    out.seconds = now_seconds() - t0;
    out.conflicts = s1.conflicts - s0.conflicts;
    out.decisions = s1.decisions - s0.decisions;
    out.propagations = s1.propagations - s0.propagations;
    out.external_propagations = s1.external_propagations - s0.external_propagations;
    out.contract_violations = s1.reason_contract_violations - s0.reason_contract_violations;
    if (prop_) {
        const zykov::ZykovPropagator::Stats& p1 = prop_->stats();
        out.clique_prunes = p1.clique_prunes - p0.clique_prunes;
        out.mnts_prunes = p1.mnts_prunes - p0.mnts_prunes;
        out.mycielskian_prunes = p1.mycielskian_prunes - p0.mycielskian_prunes;
        out.positive_prunes = p1.positive_prunes - p0.positive_prunes;
        out.decide_hints = p1.decide_hints - p0.decide_hints;
        out.contract_violations += (p1.linearity_violations - p0.linearity_violations) +
                                   (p1.prune_contract_violations - p0.prune_contract_violations) +
                                   (p1.snapshot_mismatches - p0.snapshot_mismatches) +
                                   (p1.unknown_reason_requests - p0.unknown_reason_requests);
    }
    return res;
}

// root lower bound: a generously budgeted tabu-search clique extended by
// mycielskian-style rounds. the witness goes to the sink when one is set
BoundWitness root_bound(const Graph& g, const SolveConfig& cfg) {
    const GraphView view = g.view();
    const Clique c = mnts_clique(view, kMntsRootIters, kMntsRootDepth, cfg.seed);
    BoundWitness w = mycielskian_bound(view, clique_witness(view, c), g.num_vertices());
    if (cfg.witness_sink)
        cfg.witness_sink(
            zykov::WitnessRecord{zykov::WitnessRecord::Source::root_bound, 0, w});
    return w;
}

// clique of the reduced graph for solver seeding: the root clique's
// surviving vertices, grown greedily along the dsatur order
Clique reduced_clique(const Graph& rg, const ReductionLog& log, const Clique& root,
                      const VertexOrder& order, int original_n) {
    if (rg.num_vertices() == 0)
        return {};
    std::vector<int> to_reduced(static_cast<size_t>(original_n) + 1, 0);
    for (size_t i = 1; i < log.kept.size(); ++i)
        to_reduced[static_cast<size_t>(log.kept[i])] = static_cast<int>(i);
    Clique seed;
    for (const int v : root)
        if (to_reduced[static_cast<size_t>(v)] != 0)
            seed.push_back(to_reduced[static_cast<size_t>(v)]);
    std::sort(seed.begin(), seed.end());
    return greedy_cliques(rg.view(), order, seed);
}

}  // namespace

SolveReport solve_chromatic(const Graph& g, const SolveConfig& cfg) {
    const double t0 = now_seconds();
    SolveReport r;
    const int n = g.num_vertices();
    if (n == 0) {
        r.outcome = SolveReport::Outcome::optimal;
        r.coloring.assign(1, 0);
        r.seconds = now_seconds() - t0;
        return r;
    }

    const BoundWitness root = root_bound(g, cfg);
    r.root_clique_size = static_cast<int>(root.base_clique.size());
    r.root_bound = root.bound;
    int lb = std::max(1, root.bound);

    const ReductionResult red = reduce(g, lb);
    const Graph& rg = red.reduced;
    r.reduced_n = rg.num_vertices();
    const DsaturResult ds = dsatur(rg);
    r.dsatur_colors = num_colors_used(ds.coloring);
    const int ub0 = std::max(lb, r.dsatur_colors);
    int ub = ub0;
    r.coloring = recover(red.log, ds.coloring, ub);
    assert(is_proper_coloring(g, r.coloring));

    const Clique clique = reduced_clique(rg, red.log, root.base_clique, ds.selection_order, n);
    lb = std::max(lb, static_cast<int>(clique.size()));
    r.lb = lb;
    r.ub = ub;
    if (lb >= ub) {
        assert(lb == ub);
        r.outcome = SolveReport::Outcome::optimal;
        r.chi = ub;
        r.seconds = now_seconds() - t0;
        return r;
    }

    ModeRunner runner(rg, cfg, clique, ds.selection_order);
    std::int64_t conflicts_used = 0;
    const auto time_left = [&]() {
        return cfg.time_limit_s > 0 ? cfg.time_limit_s - (now_seconds() - t0) : 0.0;
    };
    const auto conflicts_left = [&]() {
        return cfg.conflict_budget > 0 ? cfg.conflict_budget - conflicts_used
                                       : std::int64_t{0};
    };
    const auto exhausted = [&]() {
        return (cfg.time_limit_s > 0 and time_left() <= 0) or
               (cfg.conflict_budget > 0 and conflicts_left() <= 0);
    };

    int chi = -1;
    bool out_of_budget = false;

    if (cfg.search == SearchOrder::bottom_up) {
        bool seen_sat = false;
        for (int k = lb; k < ub0; ++k) {
            if (exhausted()) {
                out_of_budget = true;
                break;
            }
            KRun kr;
            const ModeRunner::Outcome res = runner.run(k, time_left(), conflicts_left(), kr);
            r.runs.push_back(kr);
            conflicts_used += kr.conflicts;
            if (res.status == sat::Status::sat) {
                if (not seen_sat) {
                    seen_sat = true;
                    chi = k;
                    r.coloring = recover(red.log, res.coloring, k);
                    r.ub = k;
                    ub = k;
                }
                if (not cfg.probe_all_budgets)
                    break;
            } else if (res.status == sat::Status::unsat) {
                // a budget can never become infeasible after a smaller
                // one was satisfiable
                assert(not seen_sat);
                lb = k + 1;
                r.lb = std::max(r.lb, lb);
            } else {
                out_of_budget = true;
                break;
            }
        }
        if (chi < 0 and not out_of_budget)
            chi = ub;  // every budget below the dsatur coloring refuted
    } else {
        for (int k = ub - 1; k >= lb; --k) {
            if (exhausted()) {
                out_of_budget = true;
                break;
            }
            KRun kr;
            const ModeRunner::Outcome res = runner.run(k, time_left(), conflicts_left(), kr);
            r.runs.push_back(kr);
            conflicts_used += kr.conflicts;
            if (res.status == sat::Status::sat) {
                ub = k;
                r.ub = k;
                r.coloring = recover(red.log, res.coloring, k);
            } else if (res.status == sat::Status::unsat) {
                assert(ub == k + 1);
                chi = ub;
                break;
            } else {
                out_of_budget = true;
                break;
            }
        }
        if (chi < 0 and not out_of_budget)
            chi = ub;  // satisfiable all the way down to the lower bound
    }

    if (chi >= 0) {
        r.outcome = SolveReport::Outcome::optimal;
        r.chi = chi;
        r.lb = chi;
        r.ub = chi;
        assert(is_proper_coloring(g, r.coloring));
        assert(num_colors_used(r.coloring) == chi);
    } else {
        r.outcome = SolveReport::Outcome::unknown;  // best bounds stand
    }
    r.seconds = now_seconds() - t0;
    return r;
}

DecideResult decide_k(const Graph& g, int k, const SolveConfig& cfg) {
    const double t0 = now_seconds();
    DecideResult r;
    const int n = g.num_vertices();
    if (n == 0) {
        r.status = sat::Status::sat;
        r.coloring.assign(1, 0);
        r.seconds = now_seconds() - t0;
        return r;
    }
    if (k < 1) {
        r.status = sat::Status::unsat;
        r.seconds = now_seconds() - t0;
        return r;
    }
    if (k >= n) {
        r.status = sat::Status::sat;
        r.coloring = rainbow_coloring(n);
        r.seconds = now_seconds() - t0;
        return r;
    }

    const BoundWitness root = root_bound(g, cfg);
    if (root.bound > k) {
        r.status = sat::Status::unsat;
        r.seconds = now_seconds() - t0;
        return r;
    }

    // reductions are colorability-preserving at palette size k
    const ReductionResult red = reduce(g, k);
    const Graph& rg = red.reduced;
    if (rg.num_vertices() == 0) {
        r.status = sat::Status::sat;
        r.coloring = recover(red.log, Coloring(1, 0), k);
        assert(is_proper_coloring(g, r.coloring));
        r.seconds = now_seconds() - t0;
        return r;
    }
    const DsaturResult ds = dsatur(rg);
    if (num_colors_used(ds.coloring) <= k) {
        r.status = sat::Status::sat;
        r.coloring = recover(red.log, ds.coloring, k);
        assert(is_proper_coloring(g, r.coloring));
        r.seconds = now_seconds() - t0;
        return r;
    }
    const Clique clique = reduced_clique(rg, red.log, root.base_clique, ds.selection_order, n);
    if (static_cast<int>(clique.size()) > k) {
        r.status = sat::Status::unsat;
        r.seconds = now_seconds() - t0;
        return r;
    }

    ModeRunner runner(rg, cfg, clique, ds.selection_order);
    const ModeRunner::Outcome res =
        runner.run(k, cfg.time_limit_s, cfg.conflict_budget, r.run);
    r.status = res.status;
    if (res.status == sat::Status::sat) {
        r.coloring = recover(red.log, res.coloring, k);
        assert(is_proper_coloring(g, r.coloring));
        assert(num_colors_used(r.coloring) <= k);
    }
    r.seconds = now_seconds() - t0;
    return r;
}

}  // namespace gcol
