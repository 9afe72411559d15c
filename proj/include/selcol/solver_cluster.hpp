#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selcol/instance.hpp"
#include "selcol/max_flow.hpp"

namespace selcol {

/// A cluster modulator U and the cliques C_1..C_r that remain once U is removed.
struct ClusterStructure {
    std::vector<Vertex> modulator;              // sorted
    std::vector<std::vector<Vertex>> clusters;  // sorted, ordered by smallest vertex
};

struct ModulatorSearch {
    std::optional<ClusterStructure> structure;  // empty when the minimum exceeds d_max
    int lower_bound = 0;                        // proven lower bound on the modulator size
    std::uint64_t branch_nodes = 0;
};

/// Some induced P3 (a, middle, b) of G - removed, or nullopt when G - removed is a
/// cluster graph.
std::optional<std::array<Vertex, 3>> find_induced_p3(const Graph& g, const std::vector<char>& removed);

/// Clusters of G - modulator. Throws std::invalid_argument when they are not cliques.
ClusterStructure make_cluster_structure(const Graph& g, std::vector<Vertex> modulator);

/// Minimum modulator by 3-way branching on induced P3s with iterative deepening.
ModulatorSearch find_cluster_modulator(const Graph& g, int d_max);

/// Vertex of X with its pre-assigned color.
using Precolored = std::pair<Vertex, Color>;

enum class FlowRole { source, sink, color, guard, vertex, part };
enum class ArcFamily { S, F, R, L, T };

struct FlowNodeInfo {
    FlowRole role = FlowRole::source;
    int first = -1;   // color i / vertex / part j (0-based)
    int second = -1;  // cluster j for guards
};

/// The layered network s -> colors -> guards -> cluster vertices -> parts -> t.
struct ClusterFlowNetwork {
    FlowGraph graph;
    std::vector<FlowNodeInfo> nodes;
    std::vector<ArcFamily> family;  // per arc

    /// Human-readable node label: s, t, a1, w1,2, v3, rho4 (all 1-based).
    std::string node_name(int node) const;
    std::vector<int> arcs_of(ArcFamily f) const;
};

/// Throws std::invalid_argument when X is not inside the modulator, hits a part
/// twice, uses a color outside 1..k, or is improperly colored.
ClusterFlowNetwork build_flow_network(const Instance& inst, const ClusterStructure& cs,
                                      const std::vector<Precolored>& precoloring);

struct Extension {
    ClusterFlowNetwork network;
    FlowResult flow;
    std::int64_t required = 0;        // number of parts X leaves unhit
    std::optional<Solution> solution;  // present iff flow.value == required
};

Extension extend_precoloring(const Instance& inst, const ClusterStructure& cs,
                             const std::vector<Precolored>& precoloring);

/// Arc list `<from> <to> <cap> <flow>`, one arc per line.
std::string dump_flow(const ClusterFlowNetwork& net, const FlowResult& flow);

struct ClusterOptions {
    int d_max = 16;
    bool labeled_colorings = false;  // enumerate all maps X -> [k] instead of set partitions
    int threads = 1;
    std::optional<std::string> dump_dir;
};

/// Throws CapacityError when the distance to cluster exceeds d_max.
Verdict solve_cluster(const Instance& inst, const ClusterOptions& opts = {});

/// As above with a caller-supplied structure.
Verdict solve_cluster(const Instance& inst, const ClusterStructure& cs, const ClusterOptions& opts = {});

}  // namespace selcol
