#include "selcol/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace selcol {

Graph::Graph(int n) : adj_(static_cast<std::size_t>(std::max(n, 0))) {}

Graph Graph::from_edges(int n, std::span<const Edge> edges)
{
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u + 1) +
                                        " " + std::to_string(v + 1));
        if (u == v)
            throw std::invalid_argument("self-loop at vertex " + std::to_string(u + 1));
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (std::size_t v = 0; v < g.adj_.size(); ++v) {
        auto& nb = g.adj_[v];
        std::sort(nb.begin(), nb.end());
        auto dup = std::adjacent_find(nb.begin(), nb.end());
        if (dup != nb.end())
            throw std::invalid_argument("duplicate edge " + std::to_string(v + 1) + " " +
                                        std::to_string(*dup + 1));
    }
    g.num_edges_ = edges.size();
    return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const
{
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < num_vertices(); ++u)
        for (Vertex v : adj_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

Graph complement(const Graph& g)
{
    const int n = g.num_vertices();
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        const auto& nb = g.neighbors(u);
        auto it = nb.begin();
        for (Vertex v = u + 1; v < n; ++v) {
            while (it != nb.end() && *it < v)
                ++it;
            if (it == nb.end() || *it != v)
                edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s)
{
    const int n = g.num_vertices();
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        Vertex v = s[i];
        if (v < 0 || v >= n)
            throw std::out_of_range("vertex " + std::to_string(v + 1) + " outside graph");
        if (index[v] != -1)
            throw std::invalid_argument("vertex " + std::to_string(v + 1) + " listed twice");
        index[v] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (Vertex w : g.neighbors(s[i]))
            if (index[w] > static_cast<int>(i))
                edges.emplace_back(static_cast<Vertex>(i), index[w]);
    InducedSubgraph out;
    out.graph = Graph::from_edges(static_cast<int>(s.size()), edges);
    out.relabel.assign(s.begin(), s.end());
    return out;
}

}  // namespace selcol
