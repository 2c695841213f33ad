#include "gcol/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gcol {

namespace {

constexpr int kOracleLimit = 16;

void check_size(const Graph& g) {
    if (g.num_vertices() > kOracleLimit)
        throw std::invalid_argument("oracle: graph too large (n > 16)");
}

// fills coloring[i..n]; colors of 1..i-1 are fixed. max_used is the largest
// color among vertices < i. canonical rule: vertex i tries only colors
// 1..min(k, max_used + 1), so each partition into color classes is visited
// exactly once
bool extend_coloring(const Graph& g, int k, int i, int max_used, Coloring& coloring) {
    const int n = g.num_vertices();
    if (i > n)
        return true;
    const int top = std::min(k, max_used + 1);
    for (int c = 1; c <= top; ++c) {
        bool ok = true;
        for (int j : g.neighbors(i)) {
            if (j < i and coloring[j] == c) {
                ok = false;
                break;
            }
        }
        if (not ok)
            continue;
        coloring[i] = c;
        if (extend_coloring(g, k, i + 1, std::max(max_used, c), coloring))
            return true;
    }
    coloring[i] = 0;
    return false;
}

}  // namespace

std::optional<Coloring> oracle_k_colorable(const Graph& g, int k) {
    check_size(g);
    if (k < 0)
        throw std::invalid_argument("oracle: negative k");
    const int n = g.num_vertices();
    if (n == 0)
        return Coloring{0};
    if (k == 0)
        return std::nullopt;
    Coloring coloring(n + 1, 0);
    if (extend_coloring(g, k, 1, 0, coloring)) {
        assert(is_proper_coloring(g, coloring));
        return coloring;
    }
    return std::nullopt;
}

int oracle_chromatic(const Graph& g) {
    check_size(g);
    if (g.num_vertices() == 0)
        return 0;
    for (int k = 1; k <= g.num_vertices(); ++k)
        if (oracle_k_colorable(g, k))
            return k;
    assert(false);  // n colors always suffice
    return g.num_vertices();
}

int oracle_chromatic_dp(const Graph& g) {
    check_size(g);
    const int n = g.num_vertices();
    if (n == 0)
        return 0;
    const unsigned full = (1u << n) - 1;

    // adjacency over 0-based bit positions
    std::vector<unsigned> adj(n, 0);
    for (const auto& e : g.edges()) {
        adj[e.u - 1] |= 1u << (e.v - 1);
        adj[e.v - 1] |= 1u << (e.u - 1);
    }

    // indep[s]: s is an independent set. peeling the lowest bit gives the
    // recurrence indep[s] = indep[s without v] and v has no neighbor in s
    std::vector<char> indep(full + 1, 0);
    indep[0] = 1;
    for (unsigned s = 1; s <= full; ++s) {
        const int v = std::countr_zero(s);
        const unsigned rest = s & (s - 1);
        indep[s] = indep[rest] and (adj[v] & s) == 0;
    }

    const int inf = n + 1;
    std::vector<int> f(full + 1, inf);
    f[0] = 0;
    for (unsigned s = 1; s <= full; ++s) {
        const unsigned vbit = s & (~s + 1);  // lowest bit: its vertex must be covered now
        // iterate subsets t of s containing vbit
        for (unsigned t = s; t != 0; t = (t - 1) & s) {
            if ((t & vbit) and indep[t])
                f[s] = std::min(f[s], f[s & ~t] + 1);
        }
    }
    return f[full];
}

}  // namespace gcol
