#pragma once

// simple undirected graph with 1-based vertex ids, plus DIMACS i/o and a
// deterministic random graph generator

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace gcol {

using Bitset = boost::dynamic_bitset<>;

// unordered vertex pair, always normalized to u < v
struct VertexPair {
    int u = 0;
    int v = 0;

    VertexPair() = default;
    VertexPair(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const VertexPair&) const = default;
};

// non-owning view of an adjacency structure restricted to an active vertex
// set. bound heuristics run on views so the same code serves both plain
// graphs and the contracted working graph inside the solver. rows may carry
// stale bits for inactive vertices; algorithms mask with active when the
// distinction matters
struct GraphView {
    const std::vector<Bitset>* rows = nullptr;  // indexed 1..n, bits 1..n
    const Bitset* active = nullptr;             // currently alive vertices
    int n = 0;                                  // universe size

    bool adjacent(int u, int v) const { return (*rows)[u].test(v); }
    const Bitset& row(int v) const { return (*rows)[v]; }
    bool is_active(int v) const { return active->test(v); }
};

// immutable undirected simple graph on vertices 1..n
class Graph {
public:
    Graph() = default;
    // throws std::invalid_argument on ids outside 1..n or self-loops;
    // duplicate edges are merged
    Graph(int n, const std::vector<VertexPair>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    bool adjacent(int u, int v) const { return u != v and rows_[u].test(v); }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    // sorted ascending
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    // adjacency as a bitset over bit positions 1..n (bit 0 unused)
    const Bitset& row(int v) const { return rows_[v]; }

    // lexicographically sorted list of edges
    const std::vector<VertexPair>& edges() const { return edges_; }

    // view over the whole graph (every vertex active)
    GraphView view() const { return GraphView{&rows_, &all_, n_}; }

private:
    int n_ = 0;
    std::vector<VertexPair> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<Bitset> rows_;
    Bitset all_;
};

// all non-adjacent pairs {u,v}, u < v, in lexicographic order
std::vector<VertexPair> nonedges(const Graph& g);

// colorings are 1-based like vertices: coloring[v] is the color of v,
// colors run 1..k, slot 0 is unused
using Coloring = std::vector<int>;

// true iff every vertex has a color >= 1 and no edge is monochromatic
bool is_proper_coloring(const Graph& g, const Coloring& coloring);

// largest color value used (0 for an empty coloring)
int num_colors_used(const Coloring& coloring);

// DIMACS graph format: "p edge n m" header, "e u v" edge lines, "c" comments.
// throws std::runtime_error on a missing header, edges before the header,
// ids outside 1..n, self-loops, or malformed lines.
Graph parse_dimacs(std::istream& in);
Graph parse_dimacs_file(const std::string& path);

// writes "p edge n m" followed by one sorted "e u v" line per edge
void write_dimacs(const Graph& g, std::ostream& out);

// splitmix64: the fixed pseudo-random generator used everywhere randomness
// is needed, chosen for portability and a trivially documented recurrence:
//   state += 0x9e3779b97f4a7c15
//   z = state; z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound > 0; uses rejection-free modulo, which is
    // biased by < bound/2^64 and acceptable for heuristic use
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
};

// G(n,p): each of the C(n,2) pairs {u,v}, iterated in lexicographic order,
// becomes an edge iff the next splitmix64 draw is < floor(p * 2^64).
// identical (n, p, seed) triples produce identical graphs on any platform.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

}  // namespace gcol
