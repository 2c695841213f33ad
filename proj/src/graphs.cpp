#include "gcol/graphs.hpp"

#include <stdexcept>

namespace gcol {

Graph path_graph(int n) {
    std::vector<VertexPair> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(v, v + 1);
    return Graph(n, edges);
}

Graph cycle_graph(int n) {
    if (n < 3)
        throw std::invalid_argument("cycle_graph: need n >= 3");
    std::vector<VertexPair> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(v, v + 1);
    edges.emplace_back(n, 1);
    return Graph(n, edges);
}

Graph complete_graph(int n) {
    std::vector<VertexPair> edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            edges.emplace_back(u, v);
    return Graph(n, edges);
}

Graph petersen_graph() {
    std::vector<VertexPair> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(1 + i, 1 + (i + 1) % 5);          // outer cycle
        edges.emplace_back(6 + i, 6 + (i + 2) % 5);          // inner pentagram
        edges.emplace_back(1 + i, 6 + i);                    // spokes
    }
    return Graph(10, edges);
}

Graph mycielskian(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<VertexPair> edges = g.edges();
    for (const auto& e : g.edges()) {
        edges.emplace_back(n + e.u, e.v);
        edges.emplace_back(e.u, n + e.v);
    }
    for (int v = 1; v <= n; ++v)
        edges.emplace_back(n + v, 2 * n + 1);
    return Graph(2 * n + 1, edges);
}

Graph grotzsch_graph() { return mycielskian(cycle_graph(5)); }

}  // namespace gcol
