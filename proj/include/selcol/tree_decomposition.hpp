#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selcol/graph.hpp"

namespace selcol {

/// Plain tree decomposition: node i has bag `bags[i]` (sorted), `edges` form a tree.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> edges;
};

/// std::nullopt when all three decomposition axioms hold and the node graph is a
/// tree; otherwise a message naming the failed axiom and a witness.
std::optional<std::string> validate_td(const Graph& g, const TreeDecomposition& td);

/// Max bag size minus one, floored at 0 (an all-empty decomposition reports 0).
int width(const TreeDecomposition& td);

/// True when every bag is empty, i.e. the raw width would be -1.
bool is_degenerate(const TreeDecomposition& td);

/// Min-fill elimination ordering; ties broken by min degree, then lowest vertex id.
std::vector<Vertex> min_fill_order(const Graph& g);

/// Decomposition induced by `min_fill_order`; one bag per vertex.
TreeDecomposition heuristic_decompose(const Graph& g);

enum class NiceKind { leaf, introduce, forget, join };

struct NiceNode {
    NiceKind kind = NiceKind::leaf;
    Vertex vertex = -1;             // introduced / forgotten vertex
    std::vector<Vertex> bag;        // sorted
    std::vector<int> children;      // 0, 1 or 2 node indices
};

/// Rooted nice decomposition. Nodes are stored in post-order: every child index is
/// smaller than its parent's, and the root is the last node.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const;
    TreeDecomposition as_plain() const;
};

/// Rebuilds `td` in nice form with the same width. The root is a forget node with
/// an empty bag whenever the graph has at least one vertex.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

/// Checks node typing, bag relations and the plain-decomposition axioms.
std::optional<std::string> validate_nice(const Graph& g, const NiceTreeDecomposition& ntd);

/// PACE .td format: `s td <bags> <max bag size> <n>`, `b <id> <v...>`, `<id> <id>`.
TreeDecomposition parse_td(std::string_view text);
std::string serialize_td(const TreeDecomposition& td, int n);

}  // namespace selcol
