#pragma once

// cnf builders for the two baseline formulations of k-coloring:
//  - assignment encoding: one boolean per (vertex, color), with
//    clique-based color fixing and position-based symmetry breaking
//  - merge encoding: one boolean per non-adjacent vertex pair (true =
//    same color), transitivity clauses, per-vertex "first of its color
//    class" markers, and a totalizer bounding the class count

#include <iosfwd>
#include <string>
#include <vector>

#include "gcol/bounds.hpp"
#include "gcol/graph.hpp"
#include "gcol/sat/types.hpp"
#include "gcol/zykov/merge_state.hpp"

namespace gcol {

struct CNF {
    int num_vars = 0;
    std::vector<sat::Clause> clauses;
};

// assignment encoding over x_{v,i} ("vertex v has color i"), i in 1..k.
// vertices are arranged clique-first: clique members take positions
// 1..|clique| and are fixed to colors 1..|clique| by unit clauses; every
// vertex at position p is restricted to colors 1..p (any proper coloring
// can be renumbered so color classes appear in position order, so this
// never changes satisfiability). variable ids: x_{v,i} = (pos(v)-1)*k + i
struct AssignmentEncoding {
    CNF cnf;
    int k = 0;
    std::vector<int> position;  // 1-based position per vertex, index 0 unused

    int var(int v, int color) const {
        return (position[static_cast<size_t>(v)] - 1) * k + color;
    }
};

// satisfiable iff g is k-colorable. |clique| > k yields the empty clause
AssignmentEncoding build_assignment(const Graph& g, int k, const Clique& clique);

Coloring decode_assignment_model(const AssignmentEncoding& enc,
                                 const std::vector<sat::Value>& model, const Graph& g);

// merge encoding. variable layout, in order: pair variables 1..M as
// numbered by EdgeVarMap (nonedges in lexicographic order), class markers
// c_v = first_class_var + v - 1 for v = 1..n, then totalizer auxiliaries
struct ZykovEncoding {
    CNF cnf;
    zykov::EdgeVarMap vars;
    int first_class_var = 0;
    std::vector<sat::Lit> counter_outputs;  // o_1..o_n over the c_v

    sat::Lit class_lit(int v) const { return sat::Lit::pos(first_class_var + v - 1); }
};

// all three rotations of the transitivity constraint per vertex triple,
// simplified under the constant-false variables of original edges:
// a tautological rotation (negated constant premise) is dropped, a
// constant implied literal leaves a binary clause
std::vector<sat::Clause> transitivity_clauses(const Graph& g, const zykov::EdgeVarMap& vars);

// c_v <-> v is the lowest-indexed vertex of its color class, i.e. no
// e_uv with u < v is true; both implication directions as clauses
std::vector<sat::Clause> color_class_clauses(const Graph& g, const zykov::EdgeVarMap& vars,
                                             int first_class_var);

// satisfiable iff g is k-colorable: transitivity + class markers + a
// totalizer over the markers bounded by k
ZykovEncoding build_full_zykov(const Graph& g, int k);

// color classes are the connected components of the e_uv = true relation
// (transitivity makes components cliques of the relation). verifies the
// result is a proper coloring with at most k colors and throws
// std::logic_error otherwise: an improper decode is an encoder bug, not
// an input error
Coloring decode_zykov_model(const std::vector<sat::Value>& model, const Graph& g,
                            const zykov::EdgeVarMap& vars, int k);

// dimacs cnf with a leading comment block (one "c " line per entry)
void write_dimacs_cnf(std::ostream& out, const CNF& cnf,
                      const std::vector<std::string>& comments);

}  // namespace gcol
