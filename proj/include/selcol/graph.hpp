#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace selcol {

/// Vertices are dense 0-based indices internally; every text format and
/// message uses 1-based ids.
using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    /// Throws std::invalid_argument on self-loops, duplicates or out-of-range endpoints.
    static Graph from_edges(int n, std::span<const Edge> edges);

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    std::size_t num_edges() const { return num_edges_; }

    /// Sorted neighbor list.
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(Vertex u, Vertex v) const;

    /// All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t num_edges_ = 0;
};

Graph complement(const Graph& g);

/// Induced subgraph on `s`; vertex i of the result is `relabel[i]` of `g`.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> relabel;
};

/// `s` is taken in the given order. Throws std::out_of_range for vertices outside g.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s);

}  // namespace selcol
