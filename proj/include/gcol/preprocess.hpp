#pragma once

// chromatic-number-preserving graph reductions. two rules are applied to a
// fixpoint, alternating a low-degree cascade with a domination pass:
//
//   low degree: a vertex with fewer than lb neighbors can always pick a
//   free color afterwards, so it is removed (lb must be a valid lower
//   bound on the chromatic number)
//
//   domination: if non-adjacent u, v satisfy N(u) subseteq N(v), then u can
//   simply reuse the color of v, so u is removed
//
// every removal is journaled so a coloring of the reduced graph can be
// lifted back to the original graph

#include <vector>

#include "gcol/graph.hpp"

namespace gcol {

struct ReductionRecord {
    enum class Kind { low_degree, dominated };

    Kind kind;
    int vertex = 0;              // removed vertex, original id
    std::vector<int> neighbors;  // low_degree: alive neighbors at removal time
    int dominator = 0;           // dominated: the vertex whose color is reused
};

struct ReductionLog {
    int original_n = 0;
    int lb = 0;                            // bound the reduction ran with
    std::vector<ReductionRecord> records;  // in removal order
    std::vector<int> kept;                 // kept[i] = original id of reduced vertex i
};

struct ReductionResult {
    Graph reduced;  // relabeled to 1..n', ids mapped through log.kept
    ReductionLog log;
};

// applies both rules until neither fires. lb must satisfy lb <= chi(g)
// (otherwise the low-degree rule is unsound); on ties in the domination
// rule (equal neighborhoods) the higher id is removed
ReductionResult reduce(const Graph& g, int lb);

// lifts a proper coloring of the reduced graph back to the original graph
// by replaying the log in reverse: dominated vertices copy their
// dominator's color, low-degree vertices take the smallest color not used
// by their recorded neighbors. k is the available palette size; throws if
// a low-degree vertex cannot be colored within it (k >= lb always works)
Coloring recover(const ReductionLog& log, const Coloring& reduced_coloring, int k);

}  // namespace gcol
