#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "selcol/instance.hpp"

namespace selcol {

/// G(n, edge_prob) on std::mt19937_64(seed), vertices dealt round-robin to p parts
/// after a seeded shuffle. Throws std::invalid_argument unless 1 <= p <= n and
/// 0 <= edge_prob <= 1.
Instance gen_random(int n, double edge_prob, int p, int k, std::uint64_t seed);

struct ComposeInput {
    int ground_n = 0;
    std::vector<std::vector<Edge>> graphs;  // edges over 0..ground_n-1
    int k = 1;
    bool require_regular = false;  // reject inputs that are not 4-regular
};

/// Index layout of the composed instance. Gadget g (ground vertex g) occupies a
/// contiguous block: A_1, A_2, A_3, A_e (each indexed by u != g, ascending), then
/// the cliques Q_12, Q_13, Q_23, Q_e of size k-1. The t vertices of Y come last.
struct ComposeLayout {
    int n = 0;
    int k = 1;
    int t = 0;

    int gadget_size() const { return 4 * (n - 1) + 4 * (k - 1); }
    /// Copy `u` (u != v) of set i in gadget v; i = 0, 1, 2 for A_1..A_3 and 3 for A_e.
    Vertex a(Vertex v, int i, Vertex u) const;
    /// Vertex `idx` of clique q in gadget v; q = 0..3 for Q_12, Q_13, Q_23, Q_e.
    Vertex q(Vertex v, int clique, int idx) const;
    Vertex y(int j) const { return n * gadget_size() + j; }
    int num_vertices() const { return n * gadget_size() + t; }
};

/// Throws std::invalid_argument on edges outside the ground set, self-loops,
/// t = 0, k < 1, n < 1 or, when required, a non-4-regular input.
Instance compose(const ComposeInput& input);

/// K_n, C_n, P_n, K_{a,b} ("K" with {"a","b"}), Petersen. Throws std::invalid_argument
/// for unknown names or bad parameters.
Graph named_graph(const std::string& name, const std::map<std::string, int>& params = {});

/// Compact names: K4, C5, P3, K3,3, petersen.
Graph parse_named_graph(const std::string& spec);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph complete_bipartite(int a, int b);
Graph petersen_graph();

}  // namespace selcol
