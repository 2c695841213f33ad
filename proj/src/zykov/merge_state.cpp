#include "gcol/zykov/merge_state.hpp"

#include <cassert>

namespace gcol::zykov {

EdgeVarMap::EdgeVarMap(const Graph& g) : n_(g.num_vertices()) {
    var_.assign(static_cast<size_t>(n_ + 1) * static_cast<size_t>(n_ + 1), 0);
    for (const VertexPair p : nonedges(g)) {
        pairs_.push_back(p);
        const int x = static_cast<int>(pairs_.size());
        var_[flat(p.u, p.v)] = x;
        var_[flat(p.v, p.u)] = x;
    }
}

MergeState::MergeState(const Graph& g, const EdgeVarMap& vars)
    : vars_(vars), n_(g.num_vertices()) {
    rep_.resize(static_cast<size_t>(n_) + 1);
    bag_.resize(static_cast<size_t>(n_) + 1);
    row_.reserve(static_cast<size_t>(n_) + 1);
    row_.emplace_back(static_cast<size_t>(n_) + 1);  // vertex 0 unused
    active_ = Bitset(static_cast<size_t>(n_) + 1);
    for (int v = 1; v <= n_; ++v) {
        rep_[static_cast<size_t>(v)] = v;
        bag_[static_cast<size_t>(v)] = {v};
        row_.push_back(g.row(v));  // graph edges are built-in separations
        active_.set(static_cast<size_t>(v));
    }
}

Apply MergeState::on_assign(int u, int v, bool positive, std::vector<Implication>& out) {
    assert(u >= 1 and u <= n_ and v >= 1 and v <= n_ and u != v);
    assert(vars_.var(u, v) != 0);
    const bool same = same_bag(u, v);
    const bool sep = separated(u, v);
    assert(not(same and sep));
    if (positive) {
        if (same)
            return Apply::redundant;
        if (sep)
            return Apply::conflict;
        merge(u, v, out);
    } else {
        if (sep)
            return Apply::redundant;
        if (same)
            return Apply::conflict;
        separate(u, v, out);
    }
    return Apply::applied;
}

void MergeState::merge(int u, int v, std::vector<Implication>& out) {
    const int ru = rep(u);
    const int rv = rep(v);
    const std::vector<int>& bu = bag_[static_cast<size_t>(ru)];
    const std::vector<int>& bv = bag_[static_cast<size_t>(rv)];

    // implied positives. first u reaches v's whole bag through the trigger,
    // then the rest of u's bag reaches v's bag through those; each reason's
    // premises are assigned earlier or queued earlier than its conclusion
    for (const int b : bv) {
        if (b == v)
            continue;
        out.push_back({vars_.lit(u, b, true),
                       {vars_.lit(u, v, false), vars_.lit(v, b, false), vars_.lit(u, b, true)}});
    }
    for (const int a : bu) {
        if (a == u)
            continue;
        for (const int b : bv)
            out.push_back({vars_.lit(a, b, true),
                           {vars_.lit(a, u, false), vars_.lit(u, b, false), vars_.lit(a, b, true)}});
    }

    // implied negatives: separations one side knew and the other did not.
    // the mediator is the trigger endpoint on the knowing side; its pair
    // with w is constant when {v, w} (resp. {u, w}) is a graph edge
    const Bitset added_u = row_[static_cast<size_t>(rv)] - row_[static_cast<size_t>(ru)];
    const Bitset added_v = row_[static_cast<size_t>(ru)] - row_[static_cast<size_t>(rv)];
    for (const int a : bu) {
        for (size_t w = added_u.find_first(); w != Bitset::npos; w = added_u.find_next(w)) {
            const int iw = static_cast<int>(w);
            Clause reason;
            reason.push_back(vars_.lit(a, v, false));
            if (const int x = vars_.var(v, iw); x != 0)
                reason.push_back(Lit::pos(x));
            reason.push_back(vars_.lit(a, iw, false));
            out.push_back({vars_.lit(a, iw, false), std::move(reason)});
        }
    }
    for (const int b : bv) {
        for (size_t w = added_v.find_first(); w != Bitset::npos; w = added_v.find_next(w)) {
            const int iw = static_cast<int>(w);
            Clause reason;
            reason.push_back(vars_.lit(b, u, false));
            if (const int x = vars_.var(u, iw); x != 0)
                reason.push_back(Lit::pos(x));
            reason.push_back(vars_.lit(b, iw, false));
            out.push_back({vars_.lit(b, iw, false), std::move(reason)});
        }
    }

    // union by size, lower representative id on ties; the emissions above
    // never depend on which side survives
    int keep = ru;
    int gone = rv;
    if (bag_[static_cast<size_t>(gone)].size() > bag_[static_cast<size_t>(keep)].size() or
        (bag_[static_cast<size_t>(gone)].size() == bag_[static_cast<size_t>(keep)].size() and
         gone < keep))
        std::swap(keep, gone);

    JournalEntry e;
    e.is_merge = true;
    e.keep = keep;
    e.gone = gone;
    e.keep_bag_size = bag_[static_cast<size_t>(keep)].size();
    e.added_keep = row_[static_cast<size_t>(gone)] - row_[static_cast<size_t>(keep)];
    e.added_gone = row_[static_cast<size_t>(keep)] - row_[static_cast<size_t>(gone)];

    const Bitset newrow = row_[static_cast<size_t>(keep)] | row_[static_cast<size_t>(gone)];
    const Bitset keep_bits = bag_bits(bag_[static_cast<size_t>(keep)], e.keep_bag_size);
    const Bitset gone_bits =
        bag_bits(bag_[static_cast<size_t>(gone)], bag_[static_cast<size_t>(gone)].size());
    // third parties separated from only one side now see the whole bag
    for (size_t w = e.added_keep.find_first(); w != Bitset::npos; w = e.added_keep.find_next(w))
        row_[w] |= keep_bits;
    for (size_t w = e.added_gone.find_first(); w != Bitset::npos; w = e.added_gone.find_next(w))
        row_[w] |= gone_bits;
    for (const int m : bag_[static_cast<size_t>(keep)])
        row_[static_cast<size_t>(m)] = newrow;
    for (const int m : bag_[static_cast<size_t>(gone)]) {
        row_[static_cast<size_t>(m)] = newrow;
        rep_[static_cast<size_t>(m)] = keep;
    }
    auto& kb = bag_[static_cast<size_t>(keep)];
    const auto& gb = bag_[static_cast<size_t>(gone)];
    kb.insert(kb.end(), gb.begin(), gb.end());
    active_.reset(static_cast<size_t>(gone));
    journal_.push_back(std::move(e));
}

void MergeState::separate(int u, int v, std::vector<Implication>& out) {
    const int ru = rep(u);
    const int rv = rep(v);
    const std::vector<int>& bu = bag_[static_cast<size_t>(ru)];
    const std::vector<int>& bv = bag_[static_cast<size_t>(rv)];

    // cross negatives: u against v's bag and v against u's bag through the
    // trigger, then the remaining cross pairs through u's fresh separations.
    // no cross pair can be a graph edge here (the bags would already be
    // separated), so every literal below is a real variable
    for (const int b : bv) {
        if (b == v)
            continue;
        out.push_back({vars_.lit(u, b, false),
                       {vars_.lit(u, v, true), vars_.lit(v, b, false), vars_.lit(u, b, false)}});
    }
    for (const int a : bu) {
        if (a == u)
            continue;
        out.push_back({vars_.lit(a, v, false),
                       {vars_.lit(u, v, true), vars_.lit(a, u, false), vars_.lit(a, v, false)}});
    }
    for (const int a : bu) {
        if (a == u)
            continue;
        for (const int b : bv) {
            if (b == v)
                continue;
            out.push_back({vars_.lit(a, b, false),
                           {vars_.lit(a, u, false), vars_.lit(u, b, true), vars_.lit(a, b, false)}});
        }
    }

    JournalEntry e;
    e.is_merge = false;
    e.keep = ru;
    e.gone = rv;
    const Bitset u_bits = bag_bits(bu, bu.size());
    const Bitset v_bits = bag_bits(bv, bv.size());
    for (const int m : bu)
        row_[static_cast<size_t>(m)] |= v_bits;
    for (const int m : bv)
        row_[static_cast<size_t>(m)] |= u_bits;
    journal_.push_back(std::move(e));
}

void MergeState::undo(const JournalEntry& e) {
    if (e.is_merge) {
        auto& kb = bag_[static_cast<size_t>(e.keep)];
        kb.resize(e.keep_bag_size);
        for (const int m : bag_[static_cast<size_t>(e.gone)])
            rep_[static_cast<size_t>(m)] = e.gone;
        active_.set(static_cast<size_t>(e.gone));
        const Bitset keep_bits = bag_bits(kb, kb.size());
        const Bitset gone_bits = bag_bits(bag_[static_cast<size_t>(e.gone)],
                                          bag_[static_cast<size_t>(e.gone)].size());
        for (const int m : kb)
            row_[static_cast<size_t>(m)] -= e.added_keep;
        for (const int m : bag_[static_cast<size_t>(e.gone)])
            row_[static_cast<size_t>(m)] -= e.added_gone;
        for (size_t w = e.added_keep.find_first(); w != Bitset::npos;
             w = e.added_keep.find_next(w))
            row_[w] -= keep_bits;
        for (size_t w = e.added_gone.find_first(); w != Bitset::npos;
             w = e.added_gone.find_next(w))
            row_[w] -= gone_bits;
    } else {
        const auto& bu = bag_[static_cast<size_t>(e.keep)];
        const auto& bv = bag_[static_cast<size_t>(e.gone)];
        const Bitset u_bits = bag_bits(bu, bu.size());
        const Bitset v_bits = bag_bits(bv, bv.size());
        for (const int m : bu)
            row_[static_cast<size_t>(m)] -= v_bits;
        for (const int m : bv)
            row_[static_cast<size_t>(m)] -= u_bits;
    }
}

void MergeState::push_level() {
    marks_.push_back(journal_.size());
}

void MergeState::backtrack_to(int level) {
    assert(level >= 0 and level <= this->level());
    if (level == this->level())
        return;
    const size_t target = marks_[static_cast<size_t>(level)];
    while (journal_.size() > target) {
        undo(journal_.back());
        journal_.pop_back();
    }
    marks_.resize(static_cast<size_t>(level));
}

Bitset MergeState::bag_bits(const std::vector<int>& members, size_t count) const {
    Bitset b(static_cast<size_t>(n_) + 1);
    for (size_t i = 0; i < count; ++i)
        b.set(static_cast<size_t>(members[i]));
    return b;
}

}  // namespace gcol::zykov
