#pragma once

// totalizer cardinality encoding: a balanced tree of unary counters over
// input literals. output j (1-based) is implied true whenever at least j
// inputs are true, so "at most k inputs" is the single unit -outputs[k]

#include <vector>

#include "gcol/sat/types.hpp"

namespace gcol::sat {

struct TotalizerResult {
    std::vector<Clause> clauses;
    std::vector<Lit> outputs;  // outputs[j-1] implied when >= j inputs hold
};

// counting clauses only; next_free_var supplies and receives variable ids
TotalizerResult totalizer_outputs(const std::vector<Lit>& inputs, int& next_free_var);

// counting clauses plus the unit bound -outputs[k] (omitted when k >= |inputs|)
TotalizerResult totalizer_at_most_k(const std::vector<Lit>& inputs, int k, int& next_free_var);

}  // namespace gcol::sat
