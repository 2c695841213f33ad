#pragma once

// small family of named graphs, used by tests and handy for experiments

#include "gcol/graph.hpp"

namespace gcol {

// path on n vertices: 1-2, 2-3, ..., (n-1)-n
Graph path_graph(int n);

// cycle on n >= 3 vertices: 1-2, ..., (n-1)-n, n-1
Graph cycle_graph(int n);

// complete graph K_n
Graph complete_graph(int n);

// the petersen graph: outer 5-cycle 1..5, inner pentagram 6..10, spokes
Graph petersen_graph();

// mycielski construction: for g on vertices 1..n, adds shadow vertices
// n+1..2n (shadow n+i adjacent to the neighbors of i) and a hub 2n+1
// adjacent to every shadow; raises the chromatic number by exactly one
// while keeping the clique number at max(2, omega(g))
Graph mycielskian(const Graph& g);

// the groetzsch graph: mycielskian of C5, the smallest triangle-free
// graph with chromatic number 4
Graph grotzsch_graph();

}  // namespace gcol
