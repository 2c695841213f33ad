#pragma once

// conflict-driven clause learning SAT solver with assumptions and an
// external propagator interface. the propagator observes every assignment,
// may propagate literals with lazily supplied reason clauses, suggest
// decisions, and inject clauses at arbitrary decision levels

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gcol/sat/types.hpp"

namespace gcol::sat {

// callback surface for an external propagator. the solver calls the notify
// functions eagerly in trail order and the cb functions at propagation
// fixpoints; see Solver::solve for the exact call protocol
class Propagator {
public:
    virtual ~Propagator() = default;

    // assignments in trail order; flushed before any cb_* call
    virtual void notify_assign(Lit lit) { (void)lit; }
    virtual void notify_new_level() {}
    // the solver jumped back: state must return to the given level
    virtual void notify_backtrack(int level) { (void)level; }

    // next externally implied literal under the current trail, or none.
    // called repeatedly after internal propagation reaches a fixpoint
    virtual Lit cb_propagate() { return {}; }

    // reason clause for a literal this propagator returned from
    // cb_propagate: must contain lit, every other literal false on the
    // current trail before lit. fetched lazily during conflict analysis
    virtual Clause cb_add_reason(Lit lit) = 0;

    // decision suggestion consulted before the internal heuristic;
    // returning none or an assigned literal falls back to the heuristic
    virtual Lit cb_decide() { return {}; }

    // clause to add at the current state, or nullopt. called when neither
    // internal nor external propagation has anything left
    virtual std::optional<Clause> cb_add_external() { return std::nullopt; }

    // total model found: return true to accept, or false and fill
    // refutations with at least one clause invalidating it
    virtual bool cb_check_found_model(const std::vector<Value>& model,
                                      std::vector<Clause>& refutations) {
        (void)model;
        (void)refutations;
        return true;
    }
};

class Solver {
public:
    Solver();

    // variables are 1-based; new_var returns the fresh id
    int new_var();
    void ensure_vars(int max_var);
    int num_vars() const { return num_vars_; }

    // add a problem clause; only legal outside solve(). returns false if
    // the clause is already falsified at the root level
    bool add_clause(Clause lits);
    bool okay() const { return ok_; }

    void set_propagator(Propagator* p) { propagator_ = p; }

    // budgets apply per solve() call; 0 disables the limit
    void set_conflict_budget(std::int64_t conflicts) { conflict_budget_ = conflicts; }
    void set_time_budget(double seconds) { time_budget_ = seconds; }

    Status solve(const std::vector<Lit>& assumptions = {});

    // after sat: values indexed by variable (kTrue / kFalse)
    const std::vector<Value>& model() const { return model_; }
    bool model_value(Lit l) const;
    // after unsat: the subset of the assumptions proven contradictory
    const std::vector<Lit>& unsat_core() const { return core_; }

    struct Stats {
        std::int64_t conflicts = 0;
        std::int64_t decisions = 0;
        std::int64_t propagations = 0;
        std::int64_t external_propagations = 0;
        std::int64_t external_clauses = 0;
        std::int64_t restarts = 0;
        std::int64_t learned_deleted = 0;
        // contract-check counters, expected to stay zero: incremented when
        // an external reason clause violates its protocol
        std::int64_t reason_contract_violations = 0;
    };
    const Stats& stats() const { return stats_; }

    // debugging aid: all live clauses in dimacs cnf format
    void dump_dimacs(std::ostream& out) const;

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    Value value(Lit l) const {
        const Value v = val_[l.var()];
        return l.positive() ? v : static_cast<Value>(-v);
    }

private:
    struct ClauseRec {
        std::vector<Lit> lits;
        double activity = 0.0;
        int lbd = 0;
        bool learned = false;
        bool deleted = false;
    };

    struct Watcher {
        int cref = -1;
        Lit blocker;
    };

    // reason markers besides a clause reference
    static constexpr int kNoReason = -1;
    static constexpr int kDecisionReason = -2;
    static constexpr int kExternalReason = -3;

    int alloc_clause(Clause lits, bool learned);
    void free_clause(int cref);
    void attach_clause(int cref);
    void detach_clause(int cref);

    void enqueue(Lit l, int reason);
    int propagate_internal();
    int handle_external_literal(Lit l);
    int propagate();  // internal + external propagation to fixpoint
    void flush_notifications();
    void new_decision_level();
    void cancel_until(int level);

    void analyze(int confl, Clause& learned, int& bt_level, int& lbd);
    void analyze_final(Lit p);
    int materialize_external_reason(Lit l);
    int reason_clause(int var);

    // add a clause while search is running; handles unit/falsified clauses
    // by backjumping. returns false if the solver became unsat at the root
    bool integrate_clause(Clause lits);
    bool fetch_external_clauses(bool& progressed);

    void bump_var(int var);
    void decay_var_activity() { var_inc_ /= 0.95; }
    void bump_clause(int cref);

    Lit pick_branch_lit();
    void heap_insert(int var);
    void heap_sift_up(size_t i);
    void heap_sift_down(size_t i);
    int heap_pop();

    void reduce_db();
    bool locked(int cref) const;

    bool budget_exhausted() const;
    void verify_model() const;

    // problem state
    int num_vars_ = 0;
    bool ok_ = true;
    std::deque<ClauseRec> clauses_;
    std::vector<int> free_crefs_;
    std::vector<int> learned_crefs_;
    std::vector<std::vector<Watcher>> watches_;  // indexed by Lit::index()

    // assignment state
    std::vector<Value> val_;      // by var
    std::vector<int> level_;      // by var
    std::vector<int> reason_;     // by var: cref or kNoReason/kDecisionReason/kExternalReason
    std::vector<char> phase_;     // saved polarity, initially positive
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    size_t qhead_ = 0;

    // decision heuristic
    std::vector<double> activity_;
    double var_inc_ = 1.0;
    std::vector<int> heap_;       // binary max-heap of vars by activity
    std::vector<int> heap_pos_;   // by var; -1 if absent

    // conflict analysis scratch
    std::vector<char> seen_;

    // external propagator
    Propagator* propagator_ = nullptr;
    size_t notified_upto_ = 0;
    int pending_conflict_ = -1;

    // solve-time state
    std::vector<Lit> assumptions_;
    std::vector<Value> model_;
    std::vector<Lit> core_;
    std::int64_t conflict_budget_ = 0;
    double time_budget_ = 0.0;
    double solve_start_ = 0.0;
    std::int64_t conflicts_at_solve_start_ = 0;

    // learned clause management
    size_t max_learnts_ = 6000;
    std::int64_t conflicts_since_restart_ = 0;
    std::int64_t restart_threshold_ = 64;

    Stats stats_;
};

}  // namespace gcol::sat
