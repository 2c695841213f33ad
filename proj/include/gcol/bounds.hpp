#pragma once

// chromatic number bounds: dsatur for upper bounds, clique heuristics and
// an iterated mycielski-style subgraph extension for lower bounds. every
// lower bound is returned together with a witness subgraph that can be
// checked structurally and turned into a pruning clause by the solver

#include <cstdint>
#include <utility>
#include <vector>

#include "gcol/graph.hpp"

namespace gcol {

using Clique = std::vector<int>;  // pairwise adjacent vertices, ascending
using VertexOrder = std::vector<int>;

bool is_clique(const GraphView& g, const Clique& c);

struct DsaturResult {
    Coloring coloring;
    VertexOrder selection_order;  // vertices in the order dsatur picked them
};

// dsatur: repeatedly color the vertex seeing the most distinct neighbor
// colors (ties: higher degree, then lower id) with the smallest feasible
// color. the selection order doubles as the fixed vertex order for the
// clique heuristics during search
DsaturResult dsatur(const Graph& g);

// greedy clique cover heuristic: processing vertices in the given order,
// each vertex joins every candidate clique it is fully adjacent to, or
// founds a new one (up to max_cliques); a second pass re-offers every
// vertex to the cliques founded after its own turn. seed vertices are
// processed first, so the largest clique found is never smaller than the
// seed. returns the largest clique
Clique greedy_cliques(const GraphView& g, const VertexOrder& order, const Clique& seed,
                      int max_cliques = 64);

// multi-neighborhood tabu search for a large clique, warm-started from the
// deterministic greedy clique over a degree-descending order (so it never
// returns a smaller clique than plain greedy). add moves grow the current
// clique, swap moves exchange a vertex for an outside vertex adjacent to
// all but one member, drop moves shrink it; dropped vertices become tabu
// for a short dynamic tenure, and the search restarts from a random greedy
// clique after depth non-improving iterations. deterministic for a fixed
// seed. runs for iter_max iterations total
Clique mnts_clique(const GraphView& g, int iter_max, int depth, std::uint64_t seed);

// witness for a lower bound claim "chi(host graph) >= bound": a subgraph H
// built from a clique by zero or more mycielski-style extension rounds.
// each round picks, for every vertex v of the current H, a mimic u_v whose
// host neighborhood covers N_H(v), plus a hub w adjacent to every mimic;
// H grows by the mimics, the hub, and the corresponding edges, and the
// bound rises by one (adapting the classical mycielskian argument: a
// bound-coloring of the grown H would yield a (bound-1)-coloring of the
// old H)
struct BoundWitness {
    enum class Kind { clique, mycielskian };

    struct Round {
        std::vector<std::pair<int, int>> mimics;  // (v in H, chosen u_v), every v of H once
        int hub = 0;                              // w, adjacent to all mimics
    };

    Kind kind = Kind::clique;
    int bound = 0;
    Clique base_clique;
    std::vector<Round> rounds;
    // final subgraph, host vertex ids, both sorted
    std::vector<int> vertices;
    std::vector<VertexPair> edges;
};

// wraps a clique as a witness (bound = clique size)
BoundWitness clique_witness(const GraphView& g, Clique c);

// runs up to max_rounds extension rounds on top of start. each successful
// round raises the bound by one; stops early when no hub exists. the hub is
// the lowest-id vertex covering every mimic set, and mimics prefer u_v = v
// when v itself is adjacent to the hub
BoundWitness mycielskian_bound(const GraphView& g, const BoundWitness& start, int max_rounds);

// structural check: base clique is a clique, every round's mimic map covers
// exactly the then-current vertex set with host-adjacency conditions
// satisfied, recorded subgraph matches the replay, bound adds up
bool verify_witness(const GraphView& g, const BoundWitness& w);

// parameter sets for the two places clique search runs: a generous root
// call before search, and a tight in-search call at every decision node
constexpr int kMntsRootIters = 10000;
constexpr int kMntsRootDepth = 100;
constexpr int kMntsSearchIters = 200;
constexpr int kMntsSearchDepth = 25;

}  // namespace gcol
