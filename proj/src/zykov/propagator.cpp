#include "gcol/zykov/propagator.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>

namespace gcol::zykov {

namespace {

// deterministic per-call seed stream for the in-search tabu runs
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t n) {
    return base + 0x9e3779b97f4a7c15ull * (n + 1);
}

}  // namespace

ZykovPropagator::ZykovPropagator(const Graph& g, sat::Solver& solver, const EdgeVarMap& vars,
                                 PropagatorConfig cfg)
    : vars_(vars), solver_(solver), cfg_(cfg), state_(g, vars) {
    entry_for_lit_.assign(2 * (static_cast<size_t>(vars_.num_vars()) + 1), -1);
    applied_.assign(static_cast<size_t>(vars_.num_vars()) + 1, 0);
    touched_ = Bitset(static_cast<size_t>(g.num_vertices()) + 1);
    touched_.set();  // first dominated-vertex scan considers everything
}

void ZykovPropagator::set_budget(int k, Lit selector) {
    budget_k_ = k;
    selector_ = selector;
}

void ZykovPropagator::set_root_clique(Clique c) {
    root_clique_ = std::move(c);
}

void ZykovPropagator::set_vertex_order(VertexOrder order) {
    vertex_order_ = std::move(order);
}

void ZykovPropagator::set_witness_sink(std::function<void(const WitnessRecord&)> sink) {
    sink_ = std::move(sink);
}

void ZykovPropagator::notify_assign(Lit lit) {
    if (not vars_.is_pair_var(lit.var()))
        return;  // budget selectors and other foreign variables
    checked_fixpoint_ = false;
    const VertexPair p = vars_.pair(lit.var());
    const size_t before = queue_.size();
    const Apply r = state_.on_assign(p.u, p.v, lit.positive(), queue_);
    switch (r) {
        case Apply::redundant:
            ++stats_.redundant_assigns;
            return;
        case Apply::conflict:
            // the solver assigned against the mirrored state. the opposite
            // literal is already in the queue with a falsified reason (the
            // mirror only reaches a state through queued implications), so
            // the conflict surfaces through the normal delivery path; the
            // mirror itself stays one assignment behind, which is sound
            ++stats_.contradictions;
            if (cfg_.verbosity >= 1)
                std::fprintf(stderr, "[zykov] contradiction on e(%d,%d)=%d\n", p.u, p.v,
                             lit.positive() ? 1 : 0);
            return;
        case Apply::applied:
            break;
    }
    if (applied_[static_cast<size_t>(lit.var())]) {
        ++stats_.linearity_violations;
    } else {
        applied_[static_cast<size_t>(lit.var())] = 1;
        applied_trail_.push_back(lit.var());
    }
    if (lit.positive())
        ++stats_.applied_merges;
    else
        ++stats_.applied_separations;
    stats_.implications += static_cast<std::int64_t>(queue_.size() - before);
    touched_.set(static_cast<size_t>(state_.rep(p.u)));
    touched_.set(static_cast<size_t>(state_.rep(p.v)));
    for (size_t i = before; i < queue_.size(); ++i) {
        const VertexPair q = vars_.pair(queue_[i].lit.var());
        touched_.set(static_cast<size_t>(state_.rep(q.u)));
        touched_.set(static_cast<size_t>(state_.rep(q.v)));
    }
    if (cfg_.verbosity >= 2)
        std::fprintf(stderr, "[zykov] %s e(%d,%d), %zu implications\n",
                     lit.positive() ? "merge" : "separate", p.u, p.v, queue_.size() - before);
}

void ZykovPropagator::notify_new_level() {
    state_.push_level();
    queue_marks_.push_back({queue_.size(), qhead_});
    applied_marks_.push_back(applied_trail_.size());
    checked_fixpoint_ = false;
    if (cfg_.check_backtrack_snapshots)
        snapshots_.push_back(take_snapshot());
}

void ZykovPropagator::notify_backtrack(int level) {
    if (level < 0 or level >= static_cast<int>(queue_marks_.size()))
        return;
    state_.backtrack_to(level);
    const QueueMark m = queue_marks_[static_cast<size_t>(level)];
    queue_.resize(m.tail);
    qhead_ = m.head;  // entries delivered at popped levels come back
    queue_marks_.resize(static_cast<size_t>(level));
    const size_t keep = applied_marks_[static_cast<size_t>(level)];
    for (size_t i = keep; i < applied_trail_.size(); ++i)
        applied_[static_cast<size_t>(applied_trail_[i])] = 0;
    applied_trail_.resize(keep);
    applied_marks_.resize(static_cast<size_t>(level));
    touched_.reset();
    checked_fixpoint_ = false;
    after_backtrack_ = true;
    if (cfg_.check_backtrack_snapshots) {
        if (not matches_snapshot(snapshots_[static_cast<size_t>(level)]))
            ++stats_.snapshot_mismatches;
        snapshots_.resize(static_cast<size_t>(level));
    }
    if (cfg_.verbosity >= 2)
        std::fprintf(stderr, "[zykov] backtrack to level %d\n", level);
}

Lit ZykovPropagator::cb_propagate() {
    if (qhead_ >= queue_.size())
        return {};
    const Implication& e = queue_[qhead_];
    entry_for_lit_[e.lit.index()] = static_cast<std::int32_t>(qhead_);
    ++qhead_;
    return e.lit;
}

Clause ZykovPropagator::cb_add_reason(Lit lit) {
    const std::int32_t idx = entry_for_lit_[lit.index()];
    if (idx >= 0 and idx < static_cast<std::int32_t>(queue_.size()) and
        queue_[static_cast<size_t>(idx)].lit == lit)
        return queue_[static_cast<size_t>(idx)].reason;
    ++stats_.unknown_reason_requests;
    assert(false and "reason requested for a literal this propagator never implied");
    return {lit};
}

VertexOrder ZykovPropagator::active_order() const {
    VertexOrder order;
    order.reserve(static_cast<size_t>(state_.num_active()));
    if (vertex_order_.empty()) {
        const Bitset& act = state_.active();
        for (size_t v = act.find_first(); v != Bitset::npos; v = act.find_next(v))
            order.push_back(static_cast<int>(v));
    } else {
        for (const int v : vertex_order_)
            if (state_.active().test(static_cast<size_t>(v)))
                order.push_back(v);
    }
    return order;
}

Clique ZykovPropagator::mapped_root_clique() const {
    Clique c;
    c.reserve(root_clique_.size());
    for (const int v : root_clique_)
        c.push_back(state_.rep(v));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

Clause ZykovPropagator::prune_clause(const BoundWitness& w) const {
    Clause out;
    out.reserve(w.edges.size() + 1);
    for (const VertexPair e : w.edges) {
        const int x = vars_.var(e.u, e.v);
        if (x != 0)  // pairs that are original edges stay constant false
            out.push_back(Lit::pos(x));
    }
    out.push_back(selector_);
    return out;
}

void ZykovPropagator::emit_witness(WitnessRecord::Source source, BoundWitness w, Lit forced) {
    // contract: every pruning-clause literal must be false right now; a
    // positive prune's forced pair is the one literal left open
    for (const VertexPair e : w.edges) {
        const int x = vars_.var(e.u, e.v);
        if (x != 0 and Lit::pos(x) != forced and solver_.value(Lit::pos(x)) != sat::kFalse)
            ++stats_.prune_contract_violations;
    }
    if (solver_.value(selector_) != sat::kFalse)
        ++stats_.prune_contract_violations;
    if (sink_)
        sink_(WitnessRecord{source, budget_k_, std::move(w)});
}

std::optional<Clause> ZykovPropagator::cb_add_external() {
    if (not cfg_.enable_pruning or budget_k_ <= 0 or checked_fixpoint_)
        return std::nullopt;
    if (selector_.none() or solver_.value(selector_) != sat::kFalse)
        return std::nullopt;  // budget not active yet at this fixpoint
    checked_fixpoint_ = true;
    const bool myc_allowed = after_backtrack_;
    after_backtrack_ = false;

    const GraphView h = state_.contracted_view();
    Clique c = greedy_cliques(h, active_order(), mapped_root_clique());
    auto source = WitnessRecord::Source::greedy_clique;
    if (static_cast<int>(c.size()) <= budget_k_ and cfg_.use_mnts) {
        Clique c2 =
            mnts_clique(h, kMntsSearchIters, kMntsSearchDepth, mix_seed(cfg_.seed, mnts_calls_++));
        if (c2.size() > c.size()) {
            c = std::move(c2);
            source = WitnessRecord::Source::mnts_clique;
        }
    }
    last_clique_ = c;

    if (static_cast<int>(c.size()) > budget_k_) {
        BoundWitness w = clique_witness(h, c);
        Clause clause = prune_clause(w);
        if (source == WitnessRecord::Source::mnts_clique)
            ++stats_.mnts_prunes;
        else
            ++stats_.clique_prunes;
        if (cfg_.verbosity >= 1)
            std::fprintf(stderr, "[zykov] clique prune, size %zu > k=%d\n", c.size(), budget_k_);
        emit_witness(source, std::move(w));
        return clause;
    }

    if (static_cast<int>(c.size()) == budget_k_) {
        // one more color class than the budget is only one extension away
        if (myc_allowed) {
            BoundWitness w = mycielskian_bound(h, clique_witness(h, c), 1);
            if (w.bound > budget_k_) {
                Clause clause = prune_clause(w);
                ++stats_.mycielskian_prunes;
                if (cfg_.verbosity >= 1)
                    std::fprintf(stderr, "[zykov] mycielskian prune, bound %d > k=%d\n", w.bound,
                                 budget_k_);
                emit_witness(WitnessRecord::Source::mycielskian, std::move(w));
                return clause;
            }
        }
        // a size-k clique pins every outside vertex with a single
        // non-neighbor in it: separating them too would need k+1 colors,
        // so the pair is forced to merge
        Bitset in_c(static_cast<size_t>(state_.num_vertices()) + 1);
        for (const int m : c)
            in_c.set(static_cast<size_t>(m));
        const Bitset& act = state_.active();
        for (size_t sv = act.find_first(); sv != Bitset::npos; sv = act.find_next(sv)) {
            const int v = static_cast<int>(sv);
            if (in_c.test(sv))
                continue;
            int missing = 0;  // clique members not separated from v
            int u = 0;
            for (const int m : c) {
                if (not state_.separated(v, m)) {
                    ++missing;
                    u = m;
                    if (missing > 1)
                        break;
                }
            }
            if (missing == 0) {
                // v completes the clique: prune outright
                Clique full = c;
                full.push_back(v);
                std::sort(full.begin(), full.end());
                BoundWitness w = clique_witness(h, full);
                Clause clause = prune_clause(w);
                ++stats_.clique_prunes;
                if (cfg_.verbosity >= 1)
                    std::fprintf(stderr, "[zykov] clique prune via scan, size %zu > k=%d\n",
                                 full.size(), budget_k_);
                emit_witness(WitnessRecord::Source::greedy_clique, std::move(w));
                return clause;
            }
            if (missing != 1)
                continue;
            const int x = vars_.var(u, v);
            assert(x != 0 and "non-separated representatives cannot be an original edge");
            if (solver_.value(Lit::pos(x)) != sat::kUnassigned)
                continue;  // cannot happen at a fixpoint, but stay defensive
            // witness: merging is forced because adding the edge instead
            // would complete c + {v} to a clique of size k+1
            BoundWitness w;
            w.kind = BoundWitness::Kind::clique;
            w.bound = budget_k_ + 1;
            w.base_clique = c;
            w.base_clique.push_back(v);
            std::sort(w.base_clique.begin(), w.base_clique.end());
            w.vertices = w.base_clique;
            for (size_t i = 0; i < w.vertices.size(); ++i)
                for (size_t j = i + 1; j < w.vertices.size(); ++j)
                    w.edges.push_back(VertexPair{w.vertices[i], w.vertices[j]});
            Implication imp;
            imp.lit = Lit::pos(x);
            imp.reason = prune_clause(w);  // contains the forced literal itself
            queue_.push_back(std::move(imp));
            ++stats_.positive_prunes;
            if (cfg_.verbosity >= 1)
                std::fprintf(stderr, "[zykov] positive prune forces e(%d,%d)=1\n", u, v);
            emit_witness(WitnessRecord::Source::positive_prune, std::move(w), Lit::pos(x));
        }
    }
    return std::nullopt;
}

Lit ZykovPropagator::cb_decide() {
    if (cfg_.use_dominated_hints) {
        const Lit hint = dominated_hint();
        if (not hint.none()) {
            ++stats_.decide_hints;
            return hint;
        }
    }
    if (cfg_.clique_decisions) {
        const Lit hint = clique_decision_hint();
        if (not hint.none()) {
            ++stats_.decide_hints;
            return hint;
        }
    }
    return {};
}

Lit ZykovPropagator::dominated_hint() {
    // u is dominated by v when every bag separated from u's is also
    // separated from v's: u's bag can then take v's color, so merge them.
    // only re-examine dominators whose separation row grew since the last
    // scan; rows only ever grow down one search path
    Lit hint;
    const Bitset& act = state_.active();
    for (size_t sv = touched_.find_first(); sv != Bitset::npos and hint.none();
         sv = touched_.find_next(sv)) {
        if (not act.test(sv))
            continue;
        const int v = static_cast<int>(sv);
        const Bitset& row_v = state_.row(v);
        for (size_t su = act.find_first(); su != Bitset::npos; su = act.find_next(su)) {
            const int u = static_cast<int>(su);
            if (u == v or state_.separated(u, v))
                continue;
            if (not state_.row(u).is_subset_of(row_v))
                continue;
            const int x = vars_.var(u, v);
            assert(x != 0);
            if (solver_.value(Lit::pos(x)) != sat::kUnassigned)
                continue;
            hint = Lit::pos(x);
            if (cfg_.verbosity >= 1)
                std::fprintf(stderr, "[zykov] dominated hint e(%d,%d)=1\n", u, v);
            break;
        }
    }
    touched_.reset();
    return hint;
}

Lit ZykovPropagator::clique_decision_hint() {
    // grow the most recent clique toward size k+1: take the outside vertex
    // seeing the most clique members and merge it into one it misses
    Clique c = last_clique_;
    for (int& m : c)
        m = state_.rep(m);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.size() < 2)
        return {};
    Bitset in_c(static_cast<size_t>(state_.num_vertices()) + 1);
    for (const int m : c)
        in_c.set(static_cast<size_t>(m));
    int best_v = 0;
    int best_u = 0;
    int best_cnt = -1;
    const Bitset& act = state_.active();
    for (size_t sv = act.find_first(); sv != Bitset::npos; sv = act.find_next(sv)) {
        if (in_c.test(sv))
            continue;
        const int v = static_cast<int>(sv);
        int cnt = 0;
        int u = 0;
        for (const int m : c) {
            if (state_.separated(v, m)) {
                ++cnt;
            } else if (u == 0) {
                const int x = vars_.var(m, v);
                if (x != 0 and solver_.value(Lit::pos(x)) == sat::kUnassigned)
                    u = m;
            }
        }
        if (u != 0 and cnt > best_cnt) {
            best_cnt = cnt;
            best_v = v;
            best_u = u;
        }
    }
    if (best_v == 0)
        return {};
    if (cfg_.verbosity >= 1)
        std::fprintf(stderr, "[zykov] clique decision e(%d,%d)=1\n", best_u, best_v);
    return Lit::pos(vars_.var(best_u, best_v));
}

bool ZykovPropagator::cb_check_found_model(const std::vector<sat::Value>& model,
                                           std::vector<Clause>& refutations) {
    (void)model;  // the mirror already reflects the full assignment
    if (budget_k_ <= 0)
        return true;
    if (state_.num_active() <= budget_k_)
        return true;
    // every pair is decided, so the active representatives are pairwise
    // separated: any k+1 of them certify the budget is exceeded. the
    // in-search clique heuristic prunes this before a model normally forms
    Clique c;
    const Bitset& act = state_.active();
    for (size_t v = act.find_first();
         v != Bitset::npos and static_cast<int>(c.size()) < budget_k_ + 1;
         v = act.find_next(v))
        c.push_back(static_cast<int>(v));
    BoundWitness w = clique_witness(state_.contracted_view(), c);
    refutations.push_back(prune_clause(w));
    ++stats_.model_refutations;
    if (cfg_.verbosity >= 1)
        std::fprintf(stderr, "[zykov] model refuted, %d classes > k=%d\n", state_.num_active(),
                     budget_k_);
    emit_witness(WitnessRecord::Source::model_refutation, std::move(w));
    return false;
}

ZykovPropagator::Snapshot ZykovPropagator::take_snapshot() const {
    Snapshot s;
    const int n = state_.num_vertices();
    s.rep.reserve(static_cast<size_t>(n));
    s.rows.reserve(static_cast<size_t>(n));
    for (int v = 1; v <= n; ++v) {
        s.rep.push_back(state_.rep(v));
        s.rows.push_back(state_.row(v));
    }
    s.active = state_.active();
    return s;
}

bool ZykovPropagator::matches_snapshot(const Snapshot& s) const {
    const int n = state_.num_vertices();
    if (s.active != state_.active())
        return false;
    for (int v = 1; v <= n; ++v) {
        if (s.rep[static_cast<size_t>(v) - 1] != state_.rep(v))
            return false;
        if (s.rows[static_cast<size_t>(v) - 1] != state_.row(v))
            return false;
    }
    return true;
}

}  // namespace gcol::zykov
