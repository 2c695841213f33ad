#include "gcol/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace gcol {

bool is_clique(const GraphView& g, const Clique& c) {
    for (size_t i = 0; i < c.size(); ++i) {
        if (not g.is_active(c[i]))
            return false;
        for (size_t j = i + 1; j < c.size(); ++j)
            if (not g.adjacent(c[i], c[j]))
                return false;
    }
    return true;
}

DsaturResult dsatur(const Graph& g) {
    const int n = g.num_vertices();
    DsaturResult result;
    result.coloring.assign(n + 1, 0);
    result.selection_order.reserve(n);

    // seen_colors[v]: colors already present in v's neighborhood
    std::vector<Bitset> seen_colors(n + 1, Bitset(n + 2));
    std::vector<int> saturation(n + 1, 0);

    for (int step = 0; step < n; ++step) {
        int pick = 0;
        for (int v = 1; v <= n; ++v) {
            if (result.coloring[v] != 0)
                continue;
            if (pick == 0 or saturation[v] > saturation[pick] or
                (saturation[v] == saturation[pick] and g.degree(v) > g.degree(pick)))
                pick = v;
        }
        int c = 1;
        while (seen_colors[pick].test(c))
            ++c;
        result.coloring[pick] = c;
        result.selection_order.push_back(pick);
        for (int w : g.neighbors(pick)) {
            if (result.coloring[w] == 0 and not seen_colors[w].test(c)) {
                seen_colors[w].set(c);
                ++saturation[w];
            }
        }
    }
    assert(is_proper_coloring(g, result.coloring));
    return result;
}

namespace {

std::vector<int> bits_of(const Bitset& b) {
    std::vector<int> out;
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i))
        out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace

Clique greedy_cliques(const GraphView& g, const VertexOrder& order, const Clique& seed,
                      int max_cliques) {
    assert(is_clique(g, seed));

    // processing sequence: seed first, then the fixed order, actives only
    std::vector<int> sequence;
    sequence.reserve(order.size() + seed.size());
    Bitset queued(g.n + 1);
    for (int v : seed) {
        sequence.push_back(v);
        queued.set(v);
    }
    for (int v : order) {
        if (g.is_active(v) and not queued.test(v)) {
            sequence.push_back(v);
            queued.set(v);
        }
    }

    std::vector<Bitset> cliques;
    std::vector<size_t> founded_at;  // position in sequence that founded the clique
    for (size_t pos = 0; pos < sequence.size(); ++pos) {
        const int v = sequence[pos];
        bool added = false;
        for (auto& c : cliques) {
            if (c.is_subset_of(g.row(v))) {
                c.set(v);
                added = true;
            }
        }
        if (not added and cliques.size() < static_cast<size_t>(max_cliques)) {
            cliques.emplace_back(g.n + 1);
            cliques.back().set(v);
            founded_at.push_back(pos);
        }
    }
    // second pass: offer each vertex to the cliques founded after its turn
    for (size_t pos = 0; pos < sequence.size(); ++pos) {
        const int v = sequence[pos];
        for (size_t i = 0; i < cliques.size(); ++i) {
            if (founded_at[i] > pos and not cliques[i].test(v) and
                cliques[i].is_subset_of(g.row(v)))
                cliques[i].set(v);
        }
    }

    size_t best = 0;
    for (size_t i = 1; i < cliques.size(); ++i)
        if (cliques[i].count() > cliques[best].count())
            best = i;
    if (cliques.empty())
        return {};
    Clique result = bits_of(cliques[best]);
    assert(is_clique(g, result));
    assert(result.size() >= seed.size());
    return result;
}

Clique mnts_clique(const GraphView& g, int iter_max, int depth, std::uint64_t seed) {
    const std::vector<int> verts = bits_of(*g.active);
    if (verts.empty())
        return {};

    SplitMix64 rng(seed);
    Bitset current(g.n + 1);
    Bitset cand(g.n + 1);  // vertices adjacent to all of current
    std::vector<int> members;

    auto recompute_cand = [&]() {
        cand = *g.active;
        for (int c : members)
            cand &= g.row(c);
        cand &= *g.active;
    };
    auto add_vertex = [&](int v) {
        current.set(v);
        members.push_back(v);
        cand &= g.row(v);
    };
    auto drop_vertex = [&](int v) {
        current.reset(v);
        members.erase(std::find(members.begin(), members.end(), v));
        recompute_cand();
    };
    auto restart = [&]() {
        current.reset();
        members.clear();
        recompute_cand();
        add_vertex(verts[rng.next_below(verts.size())]);
        while (cand.any()) {
            const auto pool = bits_of(cand);
            add_vertex(pool[rng.next_below(pool.size())]);
        }
    };

    // Warm start: seed the search with the deterministic greedy clique over a
    // degree-descending order, so the result is never worse than plain greedy.
    std::vector<int> deg(g.n + 1, 0);
    {
        Bitset masked(g.n + 1);
        for (int v : verts) {
            masked = g.row(v);
            masked &= *g.active;
            deg[v] = static_cast<int>(masked.count());
        }
    }
    VertexOrder by_degree = verts;
    std::sort(by_degree.begin(), by_degree.end(),
              [&](int a, int b) { return deg[a] != deg[b] ? deg[a] > deg[b] : a < b; });
    Clique best = greedy_cliques(g, by_degree, {});

    std::vector<long> tabu_until(g.n + 1, -1);
    members = best;
    for (int v : members)
        current.set(v);
    recompute_cand();
    int non_improving = 0;

    std::vector<int> pool;
    std::vector<std::pair<int, int>> swaps;  // (incoming, outgoing)
    for (long iter = 0; iter < iter_max; ++iter) {
        // add move: any non-tabu candidate, tabu allowed if it improves best
        pool.clear();
        for (auto i = cand.find_first(); i != Bitset::npos; i = cand.find_next(i)) {
            const int v = static_cast<int>(i);
            if (tabu_until[v] < iter or members.size() + 1 > best.size())
                pool.push_back(v);
        }
        if (not pool.empty()) {
            add_vertex(pool[rng.next_below(pool.size())]);
        } else {
            // swap move: outside vertex adjacent to all but one member
            swaps.clear();
            for (int v : verts) {
                if (current.test(v) or tabu_until[v] >= iter)
                    continue;
                Bitset miss = current;
                miss -= g.row(v);
                if (miss.count() == 1)
                    swaps.emplace_back(v, static_cast<int>(miss.find_first()));
            }
            if (not swaps.empty()) {
                const auto [in, out] = swaps[rng.next_below(swaps.size())];
                tabu_until[out] = iter + 7 + static_cast<long>(rng.next_below(std::max<size_t>(1, swaps.size())));
                drop_vertex(out);
                add_vertex(in);
            } else if (not members.empty()) {
                const int out = members[rng.next_below(members.size())];
                tabu_until[out] = iter + 7 + static_cast<long>(rng.next_below(4));
                drop_vertex(out);
            }
        }

        if (members.size() > best.size()) {
            best = members;
            non_improving = 0;
        } else if (++non_improving >= depth) {
            restart();
            if (members.size() > best.size())
                best = members;
            non_improving = 0;
        }
    }

    std::sort(best.begin(), best.end());
    assert(is_clique(g, best));
    return best;
}

BoundWitness clique_witness(const GraphView& g, Clique c) {
    assert(is_clique(g, c));
    std::sort(c.begin(), c.end());
    BoundWitness w;
    w.kind = BoundWitness::Kind::clique;
    w.bound = static_cast<int>(c.size());
    w.base_clique = c;
    w.vertices = c;
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = i + 1; j < c.size(); ++j)
            w.edges.emplace_back(c[i], c[j]);
    std::sort(w.edges.begin(), w.edges.end());
    return w;
}

namespace {

// subgraph under construction: vertex set plus adjacency rows (host ids)
struct Subgraph {
    Bitset verts;
    std::vector<Bitset> rows;

    explicit Subgraph(int n) : verts(n + 1), rows(n + 1, Bitset(n + 1)) {}

    void add_edge(int u, int v) {
        verts.set(u);
        verts.set(v);
        rows[u].set(v);
        rows[v].set(u);
    }

    std::vector<VertexPair> edge_list() const {
        std::vector<VertexPair> out;
        for (auto u = verts.find_first(); u != Bitset::npos; u = verts.find_next(u))
            for (auto v = rows[u].find_next(u); v != Bitset::npos; v = rows[u].find_next(v))
                out.emplace_back(static_cast<int>(u), static_cast<int>(v));
        return out;
    }
};

Subgraph replay_base(const GraphView& g, const BoundWitness& w) {
    Subgraph h(g.n);
    for (size_t i = 0; i < w.base_clique.size(); ++i) {
        h.verts.set(w.base_clique[i]);
        for (size_t j = i + 1; j < w.base_clique.size(); ++j)
            h.add_edge(w.base_clique[i], w.base_clique[j]);
    }
    return h;
}

void apply_round(Subgraph& h, const BoundWitness::Round& round) {
    // collect new edges against the pre-round state, then mutate
    std::vector<VertexPair> new_edges;
    for (const auto& [v, u] : round.mimics) {
        for (auto x = h.rows[v].find_first(); x != Bitset::npos; x = h.rows[v].find_next(x))
            if (static_cast<int>(x) != u)
                new_edges.emplace_back(u, static_cast<int>(x));
        new_edges.emplace_back(round.hub, u);
    }
    for (const auto& e : new_edges)
        h.add_edge(e.u, e.v);
}

// one extension round: mimic sets, hub intersection, lowest-id hub
bool try_extend(const GraphView& g, const Subgraph& h, BoundWitness::Round& out) {
    const std::vector<int> hverts = bits_of(h.verts);
    assert(not hverts.empty());

    // mimic_pool[i]: vertices whose host neighborhood covers N_H(hverts[i])
    std::vector<Bitset> mimic_pool;
    mimic_pool.reserve(hverts.size());
    Bitset hub_cand = *g.active;
    for (int v : hverts) {
        Bitset pool(g.n + 1);
        for (auto u = g.active->find_first(); u != Bitset::npos; u = g.active->find_next(u))
            if (h.rows[v].is_subset_of(g.row(static_cast<size_t>(u))))
                pool.set(u);
        assert(pool.test(v));  // v always mimics itself
        Bitset reach(g.n + 1);
        for (auto u = pool.find_first(); u != Bitset::npos; u = pool.find_next(u))
            reach |= g.row(static_cast<size_t>(u));
        reach &= *g.active;
        hub_cand &= reach;
        if (hub_cand.none())
            return false;
        mimic_pool.push_back(std::move(pool));
    }

    const int hub = static_cast<int>(hub_cand.find_first());
    out.hub = hub;
    out.mimics.clear();
    for (size_t i = 0; i < hverts.size(); ++i) {
        const int v = hverts[i];
        int u;
        if (g.row(hub).test(v)) {
            u = v;  // prefer the vertex itself when the hub reaches it
        } else {
            Bitset usable = mimic_pool[i];
            usable &= g.row(hub);
            assert(usable.any());
            u = static_cast<int>(usable.find_first());
        }
        out.mimics.emplace_back(v, u);
    }
    return true;
}

}  // namespace

BoundWitness mycielskian_bound(const GraphView& g, const BoundWitness& start, int max_rounds) {
    BoundWitness w = start;
    Subgraph h = replay_base(g, w);
    for (const auto& round : w.rounds)
        apply_round(h, round);

    for (int r = 0; r < max_rounds; ++r) {
        BoundWitness::Round round;
        if (not try_extend(g, h, round))
            break;
        apply_round(h, round);
        w.rounds.push_back(std::move(round));
        w.bound += 1;
        w.kind = BoundWitness::Kind::mycielskian;
    }
    w.vertices = bits_of(h.verts);
    w.edges = h.edge_list();
    std::sort(w.edges.begin(), w.edges.end());
    return w;
}

bool verify_witness(const GraphView& g, const BoundWitness& w) {
    if (not is_clique(g, w.base_clique))
        return false;
    if (w.bound != static_cast<int>(w.base_clique.size() + w.rounds.size()))
        return false;
    if (w.kind == BoundWitness::Kind::clique and not w.rounds.empty())
        return false;

    Subgraph h = replay_base(g, w);
    for (const auto& round : w.rounds) {
        // the mimic map must cover exactly the current vertex set
        Bitset covered(g.n + 1);
        for (const auto& [v, u] : round.mimics) {
            if (not h.verts.test(v) or covered.test(v))
                return false;
            covered.set(v);
            if (not g.is_active(u) or not g.is_active(round.hub))
                return false;
            // u's host neighborhood covers N_H(v), hub adjacent to u
            if (not h.rows[v].is_subset_of(g.row(u)))
                return false;
            if (not g.adjacent(round.hub, u))
                return false;
        }
        if (covered != h.verts)
            return false;
        apply_round(h, round);
    }

    if (w.vertices != bits_of(h.verts))
        return false;
    auto edges = h.edge_list();
    std::sort(edges.begin(), edges.end());
    if (w.edges != edges)
        return false;
    // every witness edge must be a host edge
    for (const auto& e : w.edges)
        if (not g.adjacent(e.u, e.v))
            return false;
    return true;
}

}  // namespace gcol
