#include "gcol/sat/totalizer.hpp"

#include <cassert>

namespace gcol::sat {

namespace {

// builds the counter tree over inputs[lo, hi) and returns its unary output
// literals. a leaf passes its input through; an inner node allocates fresh
// outputs and adds, for every split a + b with a + b >= 1:
//   left_a and right_b  ->  out_{a+b}
// where the a = 0 / b = 0 terms drop the corresponding premise
std::vector<Lit> build(const std::vector<Lit>& inputs, size_t lo, size_t hi,
                       std::vector<Clause>& clauses, int& next_free_var) {
    assert(hi > lo);
    if (hi - lo == 1)
        return {inputs[lo]};
    const size_t mid = lo + (hi - lo) / 2;
    const std::vector<Lit> left = build(inputs, lo, mid, clauses, next_free_var);
    const std::vector<Lit> right = build(inputs, mid, hi, clauses, next_free_var);

    std::vector<Lit> outs;
    outs.reserve(left.size() + right.size());
    for (size_t j = 0; j < left.size() + right.size(); ++j)
        outs.push_back(Lit::pos(next_free_var++));

    for (size_t a = 0; a <= left.size(); ++a) {
        for (size_t b = 0; b <= right.size(); ++b) {
            if (a + b == 0)
                continue;
            Clause c;
            if (a > 0)
                c.push_back(-left[a - 1]);
            if (b > 0)
                c.push_back(-right[b - 1]);
            c.push_back(outs[a + b - 1]);
            clauses.push_back(std::move(c));
        }
    }
    return outs;
}

}  // namespace

TotalizerResult totalizer_outputs(const std::vector<Lit>& inputs, int& next_free_var) {
    TotalizerResult r;
    if (inputs.empty())
        return r;
    r.outputs = build(inputs, 0, inputs.size(), r.clauses, next_free_var);
    return r;
}

TotalizerResult totalizer_at_most_k(const std::vector<Lit>& inputs, int k, int& next_free_var) {
    assert(k >= 0);
    TotalizerResult r = totalizer_outputs(inputs, next_free_var);
    if (static_cast<size_t>(k) < r.outputs.size())
        r.clauses.push_back({-r.outputs[k]});
    return r;
}

}  // namespace gcol::sat
