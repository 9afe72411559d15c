#pragma once

#include <cstdint>
#include <vector>

namespace selcol {

struct FlowArc {
    int from = 0;
    int to = 0;
    std::int64_t capacity = 0;
};

/// Directed network with integer capacities.
struct FlowGraph {
    int num_nodes = 0;
    int source = 0;
    int sink = 0;
    std::vector<FlowArc> arcs;

    int add_node() { return num_nodes++; }
    int add_arc(int from, int to, std::int64_t capacity)
    {
        arcs.push_back({from, to, capacity});
        return static_cast<int>(arcs.size()) - 1;
    }
};

struct FlowResult {
    std::int64_t value = 0;
    std::vector<std::int64_t> flow;  // per arc, same order as FlowGraph::arcs
};

/// Dinic's blocking-flow algorithm. Integral; deterministic for a fixed arc order.
FlowResult max_flow(const FlowGraph& net);

}  // namespace selcol
