#pragma once

// contraction mirror for the merge/separate search over vertex pairs.
// each solver variable stands for a non-adjacent vertex pair: assigning it
// true merges the two vertices' bags (same color), assigning it false
// separates them (distinct colors). MergeState keeps the bag partition and
// the full pairwise separation relation in step with the solver trail,
// emits every implied pair literal together with a transitivity-shaped
// reason clause, and rolls back exactly on backtracking.
//
// invariants maintained between calls:
//  - rows are uniform: members of one bag have identical separation rows
//  - rows are symmetric: u in row(v) iff v in row(u)
//  - same bag        iff  the pair literal is true or queued positive
//  - row bit set     iff  the pair is a graph edge, or its literal is
//                         false or queued negative

#include <cstddef>
#include <vector>

#include "gcol/graph.hpp"
#include "gcol/sat/types.hpp"

namespace gcol::zykov {

using sat::Clause;
using sat::Lit;

// variable numbering for vertex pairs: non-adjacent pairs get variables
// 1..M in lexicographic pair order; adjacent pairs have no variable (their
// separation is a built-in constant)
class EdgeVarMap {
public:
    explicit EdgeVarMap(const Graph& g);

    int num_vars() const { return static_cast<int>(pairs_.size()); }
    // 0 when {u, v} is a graph edge
    int var(int u, int v) const { return var_[flat(u, v)]; }
    VertexPair pair(int var) const { return pairs_[static_cast<size_t>(var) - 1]; }
    bool is_pair_var(int var) const { return var >= 1 and var <= num_vars(); }
    Lit lit(int u, int v, bool positive) const {
        const int x = var(u, v);
        return positive ? Lit::pos(x) : Lit::neg(x);
    }

private:
    size_t flat(int u, int v) const {
        return static_cast<size_t>(u) * static_cast<size_t>(n_ + 1) + static_cast<size_t>(v);
    }
    int n_;
    std::vector<int> var_;
    std::vector<VertexPair> pairs_;
};

// an implied pair literal plus the reason clause that justifies it. the
// reason contains the literal itself; every other literal is false on the
// solver trail strictly before it
struct Implication {
    Lit lit;
    Clause reason;
};

enum class Apply {
    applied,    // state updated, implications appended
    redundant,  // assignment already mirrored, nothing to do
    conflict,   // contradicts the mirrored state; state unchanged
};

class MergeState {
public:
    MergeState(const Graph& g, const EdgeVarMap& vars);

    // mirror one solver assignment on pair {u, v}. appends the implied
    // literals, in an order where every reason's premises lie earlier on
    // the trail (or earlier in this queue) than the implied literal
    Apply on_assign(int u, int v, bool positive, std::vector<Implication>& out);

    // decision level bookkeeping, forwarded from the solver
    void push_level();
    void backtrack_to(int level);
    int level() const { return static_cast<int>(marks_.size()); }

    int num_vertices() const { return n_; }
    int rep(int v) const { return rep_[static_cast<size_t>(v)]; }
    bool same_bag(int u, int v) const { return rep(u) == rep(v); }
    bool separated(int u, int v) const { return row_[static_cast<size_t>(u)].test(static_cast<size_t>(v)); }
    const std::vector<int>& bag(int r) const { return bag_[static_cast<size_t>(r)]; }
    const Bitset& row(int v) const { return row_[static_cast<size_t>(v)]; }

    // the contracted graph: one vertex per active bag representative,
    // adjacent when the bags are separated
    GraphView contracted_view() const { return GraphView{&row_, &active_, n_}; }
    const Bitset& active() const { return active_; }
    int num_active() const { return static_cast<int>(active_.count()); }

private:
    struct JournalEntry {
        bool is_merge = false;
        int keep = 0;           // surviving representative (merge) / first rep
        int gone = 0;           // absorbed representative (merge) / second rep
        size_t keep_bag_size = 0;
        Bitset added_keep;      // merge: separation bits new to the keep side
        Bitset added_gone;      // merge: separation bits new to the absorbed side
    };

    void merge(int u, int v, std::vector<Implication>& out);
    void separate(int u, int v, std::vector<Implication>& out);
    void undo(const JournalEntry& e);
    Bitset bag_bits(const std::vector<int>& members, size_t count) const;

    const EdgeVarMap& vars_;
    int n_;
    std::vector<int> rep_;
    std::vector<std::vector<int>> bag_;
    std::vector<Bitset> row_;
    Bitset active_;
    std::vector<JournalEntry> journal_;
    std::vector<size_t> marks_;  // journal size at the start of each level
};

}  // namespace gcol::zykov
