#pragma once

// brute-force chromatic number oracles for small graphs. these exist only
// to validate the real solver in tests: two independent implementations
// (backtracking and subset dynamic programming) cross-check each other.

#include <optional>

#include "gcol/graph.hpp"

namespace gcol {

// exhaustive backtracking over canonical colorings: vertices are colored in
// id order and vertex i may only use colors 1..(max color used so far + 1),
// which enumerates each color partition once. throws for n > 16
int oracle_chromatic(const Graph& g);

// same search with the palette capped at k; returns a proper coloring with
// colors in 1..k, or nullopt if none exists. throws for n > 16
std::optional<Coloring> oracle_k_colorable(const Graph& g, int k);

// independent implementation over subset dynamic programming: f[S] is the
// least number of independent sets covering S, computed by peeling the
// lowest-id vertex of S over all independent subsets containing it.
// throws for n > 16 (3^n subset enumeration)
int oracle_chromatic_dp(const Graph& g);

}  // namespace gcol
