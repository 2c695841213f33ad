#include "gcol/sat/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <ostream>
#include <stdexcept>

namespace gcol::sat {

namespace {

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

// luby restart sequence 1,1,2,1,1,2,4,1,...
std::int64_t luby(std::int64_t x) {
    std::int64_t size = 1;
    std::int64_t seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) / 2;
        --seq;
        x = x % size;
    }
    return 1ll << seq;
}

}  // namespace

Solver::Solver() {
    // var 0 is a dummy so vars index arrays directly
    val_.push_back(kUnassigned);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    phase_.push_back(1);
    activity_.push_back(0.0);
    heap_pos_.push_back(-1);
    seen_.push_back(0);
    watches_.resize(2);
}

int Solver::new_var() {
    ++num_vars_;
    val_.push_back(kUnassigned);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    phase_.push_back(1);  // initial polarity is positive
    activity_.push_back(0.0);
    heap_pos_.push_back(-1);
    seen_.push_back(0);
    watches_.resize(watches_.size() + 2);
    heap_insert(num_vars_);
    return num_vars_;
}

void Solver::ensure_vars(int max_var) {
    while (num_vars_ < max_var)
        new_var();
}

// ------------------------------------------------------------------
// clause storage

int Solver::alloc_clause(Clause lits, bool learned) {
    int cref;
    if (not free_crefs_.empty()) {
        cref = free_crefs_.back();
        free_crefs_.pop_back();
        clauses_[cref] = ClauseRec{};
    } else {
        cref = static_cast<int>(clauses_.size());
        clauses_.emplace_back();
    }
    ClauseRec& c = clauses_[cref];
    c.lits = std::move(lits);
    c.learned = learned;
    if (learned)
        learned_crefs_.push_back(cref);
    return cref;
}

void Solver::attach_clause(int cref) {
    const ClauseRec& c = clauses_[cref];
    assert(c.lits.size() >= 2);
    watches_[c.lits[0].index()].push_back({cref, c.lits[1]});
    watches_[c.lits[1].index()].push_back({cref, c.lits[0]});
}

void Solver::detach_clause(int cref) {
    const ClauseRec& c = clauses_[cref];
    for (int i = 0; i < 2; ++i) {
        auto& ws = watches_[c.lits[i].index()];
        for (size_t j = 0; j < ws.size(); ++j) {
            if (ws[j].cref == cref) {
                ws[j] = ws.back();
                ws.pop_back();
                break;
            }
        }
    }
}

void Solver::free_clause(int cref) {
    detach_clause(cref);
    clauses_[cref].deleted = true;
    clauses_[cref].lits.clear();
    clauses_[cref].lits.shrink_to_fit();
    free_crefs_.push_back(cref);
}

bool Solver::locked(int cref) const {
    const ClauseRec& c = clauses_[cref];
    return not c.lits.empty() and value(c.lits[0]) == kTrue and
           reason_[c.lits[0].var()] == cref;
}

bool Solver::add_clause(Clause lits) {
    assert(decision_level() == 0);
    if (not ok_)
        return false;
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    Clause filtered;
    for (size_t i = 0; i < lits.size(); ++i) {
        assert(lits[i].var() >= 1 and lits[i].var() <= num_vars_);
        if (i + 1 < lits.size() and lits[i].var() == lits[i + 1].var())
            return true;  // tautology: v and -v sort adjacently
        if (value(lits[i]) == kTrue)
            return true;  // satisfied at root
        if (value(lits[i]) != kFalse)
            filtered.push_back(lits[i]);
    }
    if (filtered.empty()) {
        ok_ = false;
        return false;
    }
    if (filtered.size() == 1) {
        enqueue(filtered[0], kNoReason);
        return true;
    }
    attach_clause(alloc_clause(std::move(filtered), false));
    return true;
}

// ------------------------------------------------------------------
// assignment and propagation

void Solver::enqueue(Lit l, int reason) {
    const int v = l.var();
    assert(val_[v] == kUnassigned);
    val_[v] = l.positive() ? kTrue : kFalse;
    level_[v] = decision_level();
    reason_[v] = reason;
    phase_[v] = l.positive() ? 1 : 0;
    trail_.push_back(l);
}

void Solver::flush_notifications() {
    if (not propagator_)
        return;
    while (notified_upto_ < trail_.size())
        propagator_->notify_assign(trail_[notified_upto_++]);
}

void Solver::new_decision_level() {
    flush_notifications();
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    if (propagator_)
        propagator_->notify_new_level();
}

void Solver::cancel_until(int level) {
    if (decision_level() <= level)
        return;
    const size_t new_size = static_cast<size_t>(trail_lim_[level]);
    if (propagator_) {
        // assignments never flushed are silently dropped; the propagator
        // only rolls back what it has seen
        if (notified_upto_ > new_size)
            notified_upto_ = new_size;
        propagator_->notify_backtrack(level);
    }
    for (size_t i = trail_.size(); i-- > new_size;) {
        const int v = trail_[i].var();
        val_[v] = kUnassigned;
        reason_[v] = kNoReason;
        if (heap_pos_[v] < 0)
            heap_insert(v);
    }
    trail_.resize(new_size);
    trail_lim_.resize(level);
    qhead_ = new_size;
}

int Solver::propagate_internal() {
    while (qhead_ < trail_.size()) {
        const Lit p = trail_[qhead_++];
        const Lit false_lit = -p;
        auto& ws = watches_[false_lit.index()];
        size_t keep = 0;
        for (size_t i = 0; i < ws.size(); ++i) {
            const Watcher w = ws[i];
            if (value(w.blocker) == kTrue) {
                ws[keep++] = w;
                continue;
            }
            ClauseRec& c = clauses_[w.cref];
            if (c.deleted)
                continue;  // drop stale watcher
            if (c.lits[0] == false_lit)
                std::swap(c.lits[0], c.lits[1]);
            assert(c.lits[1] == false_lit);
            if (value(c.lits[0]) == kTrue) {
                ws[keep++] = {w.cref, c.lits[0]};
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < c.lits.size(); ++k) {
                if (value(c.lits[k]) != kFalse) {
                    std::swap(c.lits[1], c.lits[k]);
                    watches_[c.lits[1].index()].push_back({w.cref, c.lits[0]});
                    moved = true;
                    break;
                }
            }
            if (moved)
                continue;
            ws[keep++] = w;
            if (value(c.lits[0]) == kFalse) {
                // conflict: flush the remaining watchers and report
                for (++i; i < ws.size(); ++i)
                    ws[keep++] = ws[i];
                ws.resize(keep);
                qhead_ = trail_.size();
                return w.cref;
            }
            enqueue(c.lits[0], w.cref);
            ++stats_.propagations;
        }
        ws.resize(keep);
    }
    return -1;
}

int Solver::handle_external_literal(Lit l) {
    ++stats_.external_propagations;
    assert(l.var() >= 1 and l.var() <= num_vars_);
    if (value(l) == kTrue)
        return -1;  // already holds, nothing to do
    if (value(l) == kUnassigned) {
        enqueue(l, kExternalReason);
        return -1;
    }
    // externally propagated literal is already false: its reason clause
    // is falsified and becomes the conflict
    return materialize_external_reason(l);
}

int Solver::propagate() {
    if (pending_conflict_ != -1) {
        const int c = pending_conflict_;
        pending_conflict_ = -1;
        return c;
    }
    for (;;) {
        const int confl = propagate_internal();
        if (confl != -1)
            return confl;
        if (not propagator_)
            return -1;
        flush_notifications();
        const Lit l = propagator_->cb_propagate();
        if (l.none())
            return -1;
        const int ext = handle_external_literal(l);
        if (ext != -1)
            return ext;
    }
}

// ------------------------------------------------------------------
// external propagator plumbing

// asks the propagator for the clause behind literal l. two callers: lazy
// reason lookup for a trail literal (l true), and conflict surfacing for
// an external implication that arrived already false (l false) — in that
// case the returned clause is falsified outright
int Solver::materialize_external_reason(Lit l) {
    const int var = l.var();
    Clause reason = propagator_->cb_add_reason(l);

    // contract: the clause contains the propagated literal, everything
    // else is false on the trail
    bool contains = false;
    bool others_false = true;
    for (const Lit q : reason) {
        if (q == l)
            contains = true;
        else if (value(q) != kFalse)
            others_false = false;
    }
    if (not contains or not others_false) {
        ++stats_.reason_contract_violations;
        assert(false && "external reason clause violates its contract");
    }

    // reorder: propagated literal first, then the highest-level literal,
    // so the watches survive backjumping
    auto it = std::find(reason.begin(), reason.end(), l);
    std::iter_swap(reason.begin(), it);
    if (reason.size() >= 2) {
        size_t best = 1;
        for (size_t i = 2; i < reason.size(); ++i)
            if (level_[reason[i].var()] > level_[reason[best].var()])
                best = i;
        std::iter_swap(reason.begin() + 1, reason.begin() + best);
    }

    const int cref = alloc_clause(std::move(reason), true);
    clauses_[cref].lbd = 2;  // reasons are valuable, keep them a while
    if (clauses_[cref].lits.size() >= 2)
        attach_clause(cref);
    // cache only for the literal that actually sits on the trail; in the
    // conflict case the var's assignment came from elsewhere
    if (value(l) == kTrue and reason_[var] == kExternalReason)
        reason_[var] = cref;
    return cref;
}

int Solver::reason_clause(int var) {
    if (reason_[var] == kExternalReason)
        return materialize_external_reason(val_[var] == kTrue ? Lit::pos(var)
                                                              : Lit::neg(var));
    return reason_[var];
}

bool Solver::integrate_clause(Clause lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    Clause filtered;
    for (size_t i = 0; i < lits.size(); ++i) {
        assert(lits[i].var() >= 1 and lits[i].var() <= num_vars_);
        if (i + 1 < lits.size() and lits[i].var() == lits[i + 1].var())
            return true;  // tautology
        const Value v = value(lits[i]);
        if (v == kTrue and level_[lits[i].var()] == 0)
            return true;  // permanently satisfied
        if (v == kFalse and level_[lits[i].var()] == 0)
            continue;  // permanently false literal
        filtered.push_back(lits[i]);
    }
    if (filtered.empty()) {
        ok_ = false;
        return false;
    }

    // partition: non-false literals to the front
    std::stable_partition(filtered.begin(), filtered.end(),
                          [&](Lit q) { return value(q) != kFalse; });
    size_t nonfalse = 0;
    while (nonfalse < filtered.size() and value(filtered[nonfalse]) != kFalse)
        ++nonfalse;
    // among the false literals, highest level right after the non-false ones
    std::sort(filtered.begin() + nonfalse, filtered.end(), [&](Lit a, Lit b) {
        return level_[a.var()] > level_[b.var()];
    });

    if (nonfalse >= 2) {
        attach_clause(alloc_clause(std::move(filtered), true));
        return true;
    }

    if (nonfalse == 1) {
        const Lit l = filtered[0];
        const int unit_level = filtered.size() >= 2 ? level_[filtered[1].var()] : 0;
        if (value(l) == kTrue and level_[l.var()] <= unit_level) {
            // satisfied before it could have propagated; safe to just store
            if (filtered.size() >= 2)
                attach_clause(alloc_clause(std::move(filtered), true));
            return true;
        }
        // unit under the current assignment (or satisfied only above the
        // level where it became unit, which loses a propagation if kept):
        // backtrack to where it is unit and propagate with this reason
        cancel_until(unit_level);
        if (filtered.size() == 1) {
            enqueue(l, kNoReason);
            return true;
        }
        const int cref = alloc_clause(std::move(filtered), true);
        clauses_[cref].lbd = 2;
        attach_clause(cref);
        enqueue(clauses_[cref].lits[0], cref);
        return true;
    }

    // fully falsified: backtrack to the highest level involved and turn
    // the clause into the pending conflict
    const int conflict_level = level_[filtered[0].var()];
    if (conflict_level == 0) {
        ok_ = false;
        return false;
    }
    if (filtered.size() == 1) {
        // a single literal false above the root simply holds at the root
        cancel_until(0);
        enqueue(filtered[0], kNoReason);
        return true;
    }
    cancel_until(conflict_level);
    const int cref = alloc_clause(std::move(filtered), true);
    clauses_[cref].lbd = 2;
    attach_clause(cref);
    pending_conflict_ = cref;
    return true;
}

bool Solver::fetch_external_clauses(bool& progressed) {
    for (;;) {
        flush_notifications();  // integration may have enqueued or backjumped
        auto oc = propagator_->cb_add_external();
        if (not oc.has_value())
            break;
        ++stats_.external_clauses;
        progressed = true;
        if (not integrate_clause(std::move(*oc)))
            return false;
        if (pending_conflict_ != -1)
            return true;  // deal with the conflict before fetching more
    }
    // the external check may have queued propagations of its own (e.g.
    // inferred assignments found by the pruning pass); probe once so they
    // are consumed before a decision is made
    const Lit l = propagator_->cb_propagate();
    if (not l.none()) {
        progressed = true;
        const int confl = handle_external_literal(l);
        if (confl != -1)
            pending_conflict_ = confl;
    }
    return true;
}

// ------------------------------------------------------------------
// conflict analysis

void Solver::bump_var(int var) {
    activity_[var] += var_inc_;
    if (activity_[var] > 1e100) {
        for (int v = 1; v <= num_vars_; ++v)
            activity_[v] *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[var] >= 0)
        heap_sift_up(static_cast<size_t>(heap_pos_[var]));
}

void Solver::bump_clause(int cref) {
    ClauseRec& c = clauses_[cref];
    c.activity += 1.0;
    if (c.activity > 1e20) {
        for (int lc : learned_crefs_)
            if (not clauses_[lc].deleted)
                clauses_[lc].activity *= 1e-20;
    }
}

void Solver::analyze(int confl, Clause& learned, int& bt_level, int& lbd) {
    learned.clear();
    learned.push_back(Lit{});  // slot for the asserting literal
    std::vector<int> to_clear;

    int path = 0;
    Lit p{};
    size_t idx = trail_.size();
    int cref = confl;
    do {
        assert(cref >= 0);
        ClauseRec& c = clauses_[cref];
        // every clause participating in conflict analysis must be in its
        // contracted state: the conflict clause fully falsified, a reason
        // clause satisfied only by the literal it implies. a satisfied
        // clause here would mean a disabled selector leaked into a proof
        for (size_t j = 0; j < c.lits.size(); ++j)
            assert(value(c.lits[j]) == (j == 0 and not p.none() ? kTrue : kFalse));
        if (c.learned)
            bump_clause(cref);
        for (size_t j = p.none() ? 0 : 1; j < c.lits.size(); ++j) {
            const Lit q = c.lits[j];
            const int v = q.var();
            if (seen_[v] or level_[v] == 0)
                continue;
            seen_[v] = 1;
            to_clear.push_back(v);
            bump_var(v);
            if (level_[v] >= decision_level())
                ++path;
            else
                learned.push_back(q);
        }
        while (not seen_[trail_[--idx].var()]) {}
        p = trail_[idx];
        seen_[p.var()] = 0;
        --path;
        if (path > 0)
            cref = reason_clause(p.var());
    } while (path > 0);
    learned[0] = -p;

    // clause minimization: a literal is redundant if every literal of its
    // reason is already in the clause (or at level 0)
    size_t kept = 1;
    for (size_t i = 1; i < learned.size(); ++i) {
        const int v = learned[i].var();
        const int r = reason_[v];
        bool redundant = false;
        if (r >= 0 or r == kExternalReason) {
            redundant = true;
            const int rc = reason_clause(v);
            const ClauseRec& c = clauses_[rc];
            for (size_t j = 1; j < c.lits.size(); ++j) {
                const int w = c.lits[j].var();
                if (level_[w] > 0 and not seen_[w]) {
                    redundant = false;
                    break;
                }
            }
        }
        if (not redundant)
            learned[kept++] = learned[i];
    }
    learned.resize(kept);

    // backjump level: highest level below the asserting literal
    bt_level = 0;
    if (learned.size() >= 2) {
        size_t best = 1;
        for (size_t i = 2; i < learned.size(); ++i)
            if (level_[learned[i].var()] > level_[learned[best].var()])
                best = i;
        std::iter_swap(learned.begin() + 1, learned.begin() + best);
        bt_level = level_[learned[1].var()];
    }

    // lbd: number of distinct decision levels in the clause
    std::vector<int> levels;
    levels.reserve(learned.size());
    for (const Lit q : learned)
        levels.push_back(level_[q.var()]);
    std::sort(levels.begin(), levels.end());
    lbd = static_cast<int>(std::unique(levels.begin(), levels.end()) - levels.begin());

    for (const Lit q : learned)
        seen_[q.var()] = 0;
    for (int v : to_clear)
        seen_[v] = 0;
}

void Solver::analyze_final(Lit p) {
    // p is a falsified assumption; collect the assumptions that imply -p
    core_.clear();
    core_.push_back(p);
    if (decision_level() == 0)
        return;
    std::vector<int> to_clear;
    seen_[p.var()] = 1;
    to_clear.push_back(p.var());
    for (size_t i = trail_.size(); i-- > static_cast<size_t>(trail_lim_[0]);) {
        const int v = trail_[i].var();
        if (not seen_[v])
            continue;
        if (reason_[v] == kDecisionReason) {
            core_.push_back(trail_[i]);  // an assumption contributing to the conflict
        } else if (reason_[v] != kNoReason) {
            const int rc = reason_clause(v);
            const ClauseRec& c = clauses_[rc];
            for (size_t j = 1; j < c.lits.size(); ++j) {
                const int w = c.lits[j].var();
                if (level_[w] > 0 and not seen_[w]) {
                    seen_[w] = 1;
                    to_clear.push_back(w);
                }
            }
        }
    }
    for (int v : to_clear)
        seen_[v] = 0;
}

// ------------------------------------------------------------------
// decision heuristic: indexed binary max-heap over var activity

void Solver::heap_insert(int var) {
    heap_pos_[var] = static_cast<int>(heap_.size());
    heap_.push_back(var);
    heap_sift_up(heap_.size() - 1);
}

void Solver::heap_sift_up(size_t i) {
    const int var = heap_[i];
    while (i > 0) {
        const size_t parent = (i - 1) / 2;
        const int pv = heap_[parent];
        if (activity_[pv] > activity_[var] or
            (activity_[pv] == activity_[var] and pv < var))
            break;
        heap_[i] = pv;
        heap_pos_[pv] = static_cast<int>(i);
        i = parent;
    }
    heap_[i] = var;
    heap_pos_[var] = static_cast<int>(i);
}

void Solver::heap_sift_down(size_t i) {
    const int var = heap_[i];
    const size_t n = heap_.size();
    for (;;) {
        size_t child = 2 * i + 1;
        if (child >= n)
            break;
        if (child + 1 < n) {
            const int a = heap_[child], b = heap_[child + 1];
            if (activity_[b] > activity_[a] or (activity_[b] == activity_[a] and b < a))
                ++child;
        }
        const int cv = heap_[child];
        if (activity_[var] > activity_[cv] or (activity_[var] == activity_[cv] and var < cv))
            break;
        heap_[i] = cv;
        heap_pos_[cv] = static_cast<int>(i);
        i = child;
    }
    heap_[i] = var;
    heap_pos_[var] = static_cast<int>(i);
}

int Solver::heap_pop() {
    const int top = heap_[0];
    heap_pos_[top] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (not heap_.empty()) {
        heap_[0] = last;
        heap_pos_[last] = 0;
        heap_sift_down(0);
    }
    return top;
}

Lit Solver::pick_branch_lit() {
    while (not heap_.empty()) {
        const int v = heap_pop();
        if (val_[v] == kUnassigned)
            return phase_[v] ? Lit::pos(v) : Lit::neg(v);
    }
    return {};
}

// ------------------------------------------------------------------
// learned clause management

void Solver::reduce_db() {
    // candidates: learned, alive, not a reason, not glue
    std::vector<int> cand;
    size_t live = 0;
    for (int cref : learned_crefs_) {
        const ClauseRec& c = clauses_[cref];
        if (c.deleted)
            continue;
        ++live;
        if (c.lits.size() > 2 and c.lbd > 2 and not locked(cref))
            cand.push_back(cref);
    }
    if (live <= max_learnts_)
        return;
    // delete the worse half: high lbd first, then low activity
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
        const ClauseRec& ca = clauses_[a];
        const ClauseRec& cb = clauses_[b];
        if (ca.lbd != cb.lbd)
            return ca.lbd > cb.lbd;
        if (ca.activity != cb.activity)
            return ca.activity < cb.activity;
        return a < b;
    });
    const size_t goal = cand.size() / 2;
    for (size_t i = 0; i < goal; ++i) {
        free_clause(cand[i]);
        ++stats_.learned_deleted;
    }
    learned_crefs_.erase(std::remove_if(learned_crefs_.begin(), learned_crefs_.end(),
                                        [&](int cref) { return clauses_[cref].deleted; }),
                         learned_crefs_.end());
    max_learnts_ = max_learnts_ + max_learnts_ / 10;
}

// ------------------------------------------------------------------
// top level search

bool Solver::budget_exhausted() const {
    const std::int64_t used = stats_.conflicts - conflicts_at_solve_start_;
    if (conflict_budget_ > 0 and used >= conflict_budget_)
        return true;
    if (time_budget_ > 0 and (used & 255) == 0 and now_seconds() - solve_start_ > time_budget_)
        return true;
    return false;
}

void Solver::verify_model() const {
    for (const auto& c : clauses_) {
        if (c.deleted or c.lits.empty())
            continue;
        bool sat = false;
        for (const Lit l : c.lits)
            if (value(l) == kTrue) {
                sat = true;
                break;
            }
        if (not sat)
            throw std::logic_error("solver: model fails an internal clause");
    }
    for (const Lit a : assumptions_)
        if (value(a) != kTrue)
            throw std::logic_error("solver: model violates an assumption");
}

Status Solver::solve(const std::vector<Lit>& assumptions) {
    core_.clear();
    if (not ok_)
        return Status::unsat;
    assumptions_ = assumptions;
    for ([[maybe_unused]] const Lit a : assumptions_)
        assert(a.var() >= 1 and a.var() <= num_vars_);

    cancel_until(0);
    pending_conflict_ = -1;
    solve_start_ = now_seconds();
    conflicts_at_solve_start_ = stats_.conflicts;
    conflicts_since_restart_ = 0;
    std::int64_t restarts_this_solve = 0;
    restart_threshold_ = 64 * luby(0);

    for (;;) {
        const int confl = propagate();
        if (confl != -1) {
            ++stats_.conflicts;
            ++conflicts_since_restart_;
            if (decision_level() == 0) {
                ok_ = false;
                return Status::unsat;
            }
            Clause learned;
            int bt_level = 0;
            int lbd = 0;
            analyze(confl, learned, bt_level, lbd);
            cancel_until(bt_level);
            if (learned.size() == 1) {
                enqueue(learned[0], kNoReason);
            } else {
                const int cref = alloc_clause(std::move(learned), true);
                clauses_[cref].lbd = lbd;
                attach_clause(cref);
                enqueue(clauses_[cref].lits[0], cref);
            }
            decay_var_activity();
            if (budget_exhausted())
                return Status::unknown;
            continue;
        }

        if (budget_exhausted())
            return Status::unknown;

        if (conflicts_since_restart_ >= restart_threshold_ and decision_level() > 0) {
            ++stats_.restarts;
            ++restarts_this_solve;
            conflicts_since_restart_ = 0;
            restart_threshold_ = 64 * luby(restarts_this_solve);
            cancel_until(0);
            continue;
        }

        if (propagator_) {
            bool progressed = false;
            if (not fetch_external_clauses(progressed)) {
                ok_ = false;
                return Status::unsat;
            }
            if (progressed)
                continue;  // re-propagate, or surface the pending conflict
        }

        {
            size_t live = 0;
            for (int cref : learned_crefs_)
                if (not clauses_[cref].deleted)
                    ++live;
            if (live > max_learnts_)
                reduce_db();
        }

        // place assumptions, then decide
        Lit next{};
        while (decision_level() < static_cast<int>(assumptions_.size())) {
            const Lit p = assumptions_[decision_level()];
            if (value(p) == kTrue) {
                new_decision_level();  // placeholder level keeps indices aligned
            } else if (value(p) == kFalse) {
                analyze_final(p);
                return Status::unsat;
            } else {
                next = p;
                break;
            }
        }
        if (next.none() and propagator_) {
            flush_notifications();
            const Lit hint = propagator_->cb_decide();
            if (not hint.none()) {
                assert(hint.var() >= 1 and hint.var() <= num_vars_);
                if (value(hint) == kUnassigned)
                    next = hint;
            }
        }
        if (next.none())
            next = pick_branch_lit();

        if (next.none()) {
            // total assignment: re-check the model, then let the
            // propagator do its solution analysis
            verify_model();
            if (propagator_) {
                flush_notifications();
                std::vector<Clause> refutations;
                if (not propagator_->cb_check_found_model(val_, refutations)) {
                    if (refutations.empty())
                        throw std::logic_error("solver: model refuted without clauses");
                    bool state_changed = false;
                    for (auto& c : refutations) {
                        const size_t before = trail_.size();
                        const int lvl = decision_level();
                        if (not integrate_clause(std::move(c))) {
                            ok_ = false;
                            return Status::unsat;
                        }
                        if (pending_conflict_ != -1 or trail_.size() != before or
                            decision_level() != lvl)
                            state_changed = true;
                        if (pending_conflict_ != -1)
                            break;
                    }
                    if (not state_changed)
                        throw std::logic_error("solver: refutation clauses changed nothing");
                    continue;
                }
            }
            model_ = val_;
            return Status::sat;
        }

        ++stats_.decisions;
        new_decision_level();
        enqueue(next, kDecisionReason);
    }
}

bool Solver::model_value(Lit l) const {
    assert(not model_.empty());
    const Value v = model_[l.var()];
    return l.positive() ? v == kTrue : v == kFalse;
}

void Solver::dump_dimacs(std::ostream& out) const {
    size_t count = 0;
    for (const auto& c : clauses_)
        if (not c.deleted and not c.lits.empty())
            ++count;
    // root-level units live on the trail, not in clause storage
    const size_t units = trail_lim_.empty() ? trail_.size() : static_cast<size_t>(trail_lim_[0]);
    out << "p cnf " << num_vars_ << " " << count + units << "\n";
    for (size_t i = 0; i < units; ++i)
        out << trail_[i].code << " 0\n";
    for (const auto& c : clauses_) {
        if (c.deleted or c.lits.empty())
            continue;
        for (const Lit l : c.lits)
            out << l.code << " ";
        out << "0\n";
    }
}

}  // namespace gcol::sat
