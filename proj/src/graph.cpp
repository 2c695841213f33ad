#include "gcol/graph.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gcol {

Graph::Graph(int n, const std::vector<VertexPair>& edges) : n_(n) {
    if (n < 0)
        throw std::invalid_argument("graph: negative vertex count");
    edges_ = edges;
    for (const auto& e : edges_) {
        if (e.u < 1 or e.v > n_)
            throw std::invalid_argument("graph: vertex id outside 1..n");
        if (e.u == e.v)
            throw std::invalid_argument("graph: self-loop");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    adj_.assign(n_ + 1, {});
    rows_.assign(n_ + 1, Bitset(n_ + 1));
    all_ = Bitset(n_ + 1);
    for (int v = 1; v <= n_; ++v)
        all_.set(v);
    for (const auto& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
        rows_[e.u].set(e.v);
        rows_[e.v].set(e.u);
    }
    for (auto& nbrs : adj_)
        std::sort(nbrs.begin(), nbrs.end());
}

std::vector<VertexPair> nonedges(const Graph& g) {
    std::vector<VertexPair> result;
    const int n = g.num_vertices();
    result.reserve(static_cast<size_t>(n) * (n - 1) / 2 - g.num_edges());
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (not g.adjacent(u, v))
                result.emplace_back(u, v);
    return result;
}

bool is_proper_coloring(const Graph& g, const Coloring& coloring) {
    if (coloring.size() != static_cast<size_t>(g.num_vertices()) + 1)
        return false;
    for (int v = 1; v <= g.num_vertices(); ++v)
        if (coloring[v] < 1)
            return false;
    for (const auto& e : g.edges())
        if (coloring[e.u] == coloring[e.v])
            return false;
    return true;
}

int num_colors_used(const Coloring& coloring) {
    int maxc = 0;
    for (size_t v = 1; v < coloring.size(); ++v)
        maxc = std::max(maxc, coloring[v]);
    return maxc;
}

namespace {

[[noreturn]] void parse_error(int lineno, const std::string& what) {
    std::ostringstream msg;
    msg << "dimacs parse error, line " << lineno << ": " << what;
    throw std::runtime_error(msg.str());
}

}  // namespace

Graph parse_dimacs(std::istream& in) {
    int n = -1;
    long declared_m = -1;
    std::vector<VertexPair> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // tolerate dos line endings
        if (not line.empty() and line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag.empty() or tag == "c" or tag[0] == 'c')
            continue;
        if (tag == "p") {
            if (n >= 0)
                parse_error(lineno, "duplicate p line");
            std::string format;
            if (not(ls >> format >> n >> declared_m) or n < 0 or declared_m < 0)
                parse_error(lineno, "malformed p line");
            // "edge" is standard, "col" appears in the wild
            if (format != "edge" and format != "col" and format != "edges")
                parse_error(lineno, "unsupported format '" + format + "'");
        } else if (tag == "e") {
            if (n < 0)
                parse_error(lineno, "edge before p line");
            int u, v;
            if (not(ls >> u >> v))
                parse_error(lineno, "malformed e line");
            if (u < 1 or u > n or v < 1 or v > n)
                parse_error(lineno, "vertex id outside 1..n");
            if (u == v)
                parse_error(lineno, "self-loop");
            edges.emplace_back(u, v);
        } else {
            parse_error(lineno, "unrecognized line tag '" + tag + "'");
        }
    }
    if (n < 0)
        throw std::runtime_error("dimacs parse error: no p line found");
    // declared_m is not enforced: files with duplicate or miscounted edge
    // lines are common, duplicates are merged by the Graph constructor
    return Graph(n, edges);
}

Graph parse_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (not in)
        throw std::runtime_error("cannot open file: " + path);
    return parse_dimacs(in);
}

void write_dimacs(const Graph& g, std::ostream& out) {
    out << "p edge " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (const auto& e : g.edges())
        out << "e " << e.u << " " << e.v << "\n";
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 0)
        throw std::invalid_argument("erdos_renyi: negative vertex count");
    if (p < 0.0 or p > 1.0)
        throw std::invalid_argument("erdos_renyi: edge probability outside [0, 1]");
    std::vector<VertexPair> edges;
    SplitMix64 rng(seed);
    if (p >= 1.0) {
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v)
                edges.emplace_back(u, v);
        return Graph(n, edges);
    }
    // threshold compares against the full 64-bit draw; p <= 0 keeps no pair.
    // one draw is consumed per pair even when p == 0 so that the mapping
    // from (pair index) to (rng position) never depends on p
    const auto threshold =
        p <= 0.0 ? 0ull : static_cast<std::uint64_t>(p * 18446744073709551616.0);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (rng.next() < threshold)
                edges.emplace_back(u, v);
    return Graph(n, edges);
}

}  // namespace gcol
