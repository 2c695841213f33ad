#include "gcol/preprocess.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gcol {

namespace {

// collects the set bits of row restricted to alive, ascending
std::vector<int> alive_neighbors(const Bitset& row, int n) {
    std::vector<int> result;
    for (int w = 1; w <= n; ++w)
        if (row.test(w))
            result.push_back(w);
    return result;
}

}  // namespace

ReductionResult reduce(const Graph& g, int lb) {
    const int n = g.num_vertices();
    ReductionLog log;
    log.original_n = n;
    log.lb = lb;

    // mutable adjacency restricted to alive vertices
    std::vector<Bitset> rows(n + 1, Bitset(n + 1));
    for (int v = 1; v <= n; ++v)
        rows[v] = g.row(v);
    Bitset alive(n + 1);
    for (int v = 1; v <= n; ++v)
        alive.set(v);

    auto remove_vertex = [&](int v) {
        alive.reset(v);
        for (int w = 1; w <= n; ++w)
            if (rows[v].test(w))
                rows[w].reset(v);
        rows[v].reset();
    };

    bool changed = true;
    while (changed) {
        changed = false;

        // low-degree cascade: removals lower other degrees, so rescan until
        // no alive vertex is below the bound
        bool removed = true;
        while (removed) {
            removed = false;
            for (int v = 1; v <= n; ++v) {
                if (not alive.test(v) or static_cast<int>(rows[v].count()) >= lb)
                    continue;
                ReductionRecord rec;
                rec.kind = ReductionRecord::Kind::low_degree;
                rec.vertex = v;
                rec.neighbors = alive_neighbors(rows[v], n);
                log.records.push_back(std::move(rec));
                remove_vertex(v);
                removed = true;
                changed = true;
            }
        }

        // domination pass: one forward sweep; new dominations exposed by
        // these removals are picked up by the next outer iteration
        for (int u = 1; u <= n; ++u) {
            if (not alive.test(u))
                continue;
            for (int v = 1; v <= n; ++v) {
                if (u == v or not alive.test(v) or rows[u].test(v))
                    continue;
                if (not rows[u].is_subset_of(rows[v]))
                    continue;
                // on equal neighborhoods remove the higher id only
                if (rows[u] == rows[v] and u < v)
                    continue;
                ReductionRecord rec;
                rec.kind = ReductionRecord::Kind::dominated;
                rec.vertex = u;
                rec.dominator = v;
                log.records.push_back(std::move(rec));
                remove_vertex(u);
                changed = true;
                break;  // u is gone, move on
            }
        }
    }

    // relabel survivors ascending to 1..n'
    log.kept.assign(1, 0);
    std::vector<int> new_id(n + 1, 0);
    for (int v = 1; v <= n; ++v) {
        if (alive.test(v)) {
            new_id[v] = static_cast<int>(log.kept.size());
            log.kept.push_back(v);
        }
    }
    std::vector<VertexPair> edges;
    for (const auto& e : g.edges())
        if (alive.test(e.u) and alive.test(e.v))
            edges.emplace_back(new_id[e.u], new_id[e.v]);
    return ReductionResult{Graph(static_cast<int>(log.kept.size()) - 1, edges), std::move(log)};
}

Coloring recover(const ReductionLog& log, const Coloring& reduced_coloring, int k) {
    const int reduced_n = static_cast<int>(log.kept.size()) - 1;
    if (reduced_coloring.size() != static_cast<size_t>(reduced_n) + 1)
        throw std::invalid_argument("recover: coloring size does not match reduced graph");

    Coloring coloring(log.original_n + 1, 0);
    for (int i = 1; i <= reduced_n; ++i)
        coloring[log.kept[i]] = reduced_coloring[i];

    // replay in reverse: each record's dependencies (recorded neighbors,
    // dominator) were alive at removal time, hence already recolored here
    for (auto it = log.records.rbegin(); it != log.records.rend(); ++it) {
        if (it->kind == ReductionRecord::Kind::dominated) {
            assert(coloring[it->dominator] > 0);
            coloring[it->vertex] = coloring[it->dominator];
        } else {
            Bitset used(k + 2);
            for (int w : it->neighbors) {
                assert(coloring[w] > 0);
                if (coloring[w] <= k)
                    used.set(coloring[w]);
            }
            int c = 1;
            while (c <= k and used.test(c))
                ++c;
            if (c > k)
                throw std::runtime_error("recover: palette exhausted (k too small)");
            coloring[it->vertex] = c;
        }
    }
    return coloring;
}

}  // namespace gcol
