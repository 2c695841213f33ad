#include "gcol/encodings.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>

#include "gcol/sat/totalizer.hpp"

namespace gcol {

using sat::Clause;
using sat::Lit;

AssignmentEncoding build_assignment(const Graph& g, int k, const Clique& clique) {
    assert(k >= 1);
    const int n = g.num_vertices();
    AssignmentEncoding enc;
    enc.k = k;
    enc.position.assign(static_cast<size_t>(n) + 1, 0);

    if (static_cast<int>(clique.size()) > k) {
        enc.cnf.clauses.push_back({});  // k colors cannot even cover the clique
        return enc;
    }

    int pos = 0;
    for (const int v : clique)
        enc.position[static_cast<size_t>(v)] = ++pos;
    for (int v = 1; v <= n; ++v)
        if (enc.position[static_cast<size_t>(v)] == 0)
            enc.position[static_cast<size_t>(v)] = ++pos;
    enc.cnf.num_vars = n * k;

    auto x = [&](int v, int i) { return Lit::pos(enc.var(v, i)); };

    for (int v = 1; v <= n; ++v) {
        const int p = enc.position[static_cast<size_t>(v)];
        // at least one color, colors above the position cut away
        Clause at_least;
        for (int i = 1; i <= std::min(k, p); ++i)
            at_least.push_back(x(v, i));
        enc.cnf.clauses.push_back(std::move(at_least));
        for (int i = p + 1; i <= k; ++i)
            enc.cnf.clauses.push_back({-x(v, i)});
        // at most one color, pairwise
        for (int i = 1; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j)
                enc.cnf.clauses.push_back({-x(v, i), -x(v, j)});
    }
    // clique members take the first |clique| colors in order
    for (size_t j = 0; j < clique.size(); ++j)
        enc.cnf.clauses.push_back({x(clique[j], static_cast<int>(j) + 1)});
    // adjacent vertices never share a color
    for (int u = 1; u <= n; ++u) {
        const Bitset& row = g.row(u);
        for (size_t v = row.find_next(static_cast<size_t>(u)); v != Bitset::npos;
             v = row.find_next(v))
            for (int i = 1; i <= k; ++i)
                enc.cnf.clauses.push_back({-x(u, i), -x(static_cast<int>(v), i)});
    }
    return enc;
}

Coloring decode_assignment_model(const AssignmentEncoding& enc,
                                 const std::vector<sat::Value>& model, const Graph& g) {
    const int n = g.num_vertices();
    Coloring coloring(static_cast<size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v) {
        for (int i = 1; i <= enc.k; ++i) {
            if (model[static_cast<size_t>(enc.var(v, i))] == sat::kTrue) {
                coloring[static_cast<size_t>(v)] = i;
                break;
            }
        }
        if (coloring[static_cast<size_t>(v)] == 0)
            throw std::logic_error("assignment model leaves a vertex uncolored");
    }
    if (not is_proper_coloring(g, coloring))
        throw std::logic_error("assignment model decodes to an improper coloring");
    return coloring;
}

std::vector<Clause> transitivity_clauses(const Graph& g, const zykov::EdgeVarMap& vars) {
    const int n = g.num_vertices();
    std::vector<Clause> out;
    // one rotation per mediator m of the triple: merging both pairs at m
    // forces the third pair merged. a premise on an original edge makes
    // the rotation vacuous; an implied original edge cuts it to two lits
    const auto rotation = [&](int m, int a, int b) {
        const int pa = vars.var(m, a);
        const int pb = vars.var(m, b);
        if (pa == 0 or pb == 0)
            return;  // negated constant-false premise: always satisfied
        Clause cl{Lit::neg(pa), Lit::neg(pb)};
        if (const int i = vars.var(a, b); i != 0)
            cl.push_back(Lit::pos(i));
        out.push_back(std::move(cl));
    };
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            for (int w = v + 1; w <= n; ++w) {
                rotation(u, v, w);
                rotation(v, u, w);
                rotation(w, u, v);
            }
    return out;
}

std::vector<Clause> color_class_clauses(const Graph& g, const zykov::EdgeVarMap& vars,
                                        int first_class_var) {
    const int n = g.num_vertices();
    std::vector<Clause> out;
    for (int v = 1; v <= n; ++v) {
        const Lit cv = Lit::pos(first_class_var + v - 1);
        Clause closing{cv};  // c_v or some earlier vertex shares v's class
        for (int u = 1; u < v; ++u) {
            const int x = vars.var(u, v);
            if (x == 0)
                continue;  // adjacent: never in one class
            out.push_back({-cv, Lit::neg(x)});
            closing.push_back(Lit::pos(x));
        }
        out.push_back(std::move(closing));
    }
    return out;
}

ZykovEncoding build_full_zykov(const Graph& g, int k) {
    assert(k >= 1);
    const int n = g.num_vertices();
    ZykovEncoding enc{CNF{}, zykov::EdgeVarMap(g), 0, {}};
    enc.first_class_var = enc.vars.num_vars() + 1;
    enc.cnf.clauses = transitivity_clauses(g, enc.vars);
    auto classes = color_class_clauses(g, enc.vars, enc.first_class_var);
    enc.cnf.clauses.insert(enc.cnf.clauses.end(), classes.begin(), classes.end());

    std::vector<Lit> inputs;
    inputs.reserve(static_cast<size_t>(n));
    for (int v = 1; v <= n; ++v)
        inputs.push_back(enc.class_lit(v));
    int next_free = enc.first_class_var + n;
    const sat::TotalizerResult tot = sat::totalizer_at_most_k(inputs, k, next_free);
    enc.cnf.clauses.insert(enc.cnf.clauses.end(), tot.clauses.begin(), tot.clauses.end());
    enc.counter_outputs = tot.outputs;
    enc.cnf.num_vars = next_free - 1;
    return enc;
}

Coloring decode_zykov_model(const std::vector<sat::Value>& model, const Graph& g,
                            const zykov::EdgeVarMap& vars, int k) {
    const int n = g.num_vertices();
    // color classes = components of the merge relation; transitivity makes
    // a plain scan per vertex sufficient, but use a union-find to stay
    // correct for any model shape
    std::vector<int> root(static_cast<size_t>(n) + 1);
    for (int v = 0; v <= n; ++v)
        root[static_cast<size_t>(v)] = v;
    const auto find = [&](int v) {
        while (root[static_cast<size_t>(v)] != v)
            v = root[static_cast<size_t>(v)] = root[static_cast<size_t>(root[static_cast<size_t>(v)])];
        return v;
    };
    for (int x = 1; x <= vars.num_vars(); ++x) {
        if (model[static_cast<size_t>(x)] != sat::kTrue)
            continue;
        const VertexPair p = vars.pair(x);
        const int ru = find(p.u);
        const int rv = find(p.v);
        if (ru != rv)
            root[static_cast<size_t>(std::max(ru, rv))] = std::min(ru, rv);
    }
    Coloring coloring(static_cast<size_t>(n) + 1, 0);
    int used = 0;
    for (int v = 1; v <= n; ++v) {
        const int r = find(v);
        if (coloring[static_cast<size_t>(r)] == 0)
            coloring[static_cast<size_t>(r)] = ++used;
        coloring[static_cast<size_t>(v)] = coloring[static_cast<size_t>(r)];
    }
    if (used > k)
        throw std::logic_error("merge model uses more classes than the color budget");
    if (not is_proper_coloring(g, coloring))
        throw std::logic_error("merge model decodes to an improper coloring");
    return coloring;
}

void write_dimacs_cnf(std::ostream& out, const CNF& cnf,
                      const std::vector<std::string>& comments) {
    for (const std::string& line : comments)
        out << "c " << line << '\n';
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const Clause& cl : cnf.clauses) {
        for (const Lit l : cl)
            out << l.code << ' ';
        out << "0\n";
    }
}

}  // namespace gcol
