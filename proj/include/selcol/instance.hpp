#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "selcol/graph.hpp"

namespace selcol {

using Color = int;  // 1..k

/// Thrown when an instance exceeds a solver's configured limits.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A graph together with a partition of its vertices into p parts and a color budget k.
/// Parts are 0-based internally and emitted 1-based.
class Instance {
public:
    /// Throws std::invalid_argument unless `parts` is a partition of V(graph) into
    /// nonempty blocks and k >= 1.
    Instance(Graph graph, std::vector<std::vector<Vertex>> parts, int k);

    const Graph& graph() const { return graph_; }
    int num_vertices() const { return graph_.num_vertices(); }
    int num_parts() const { return static_cast<int>(parts_.size()); }
    int k() const { return k_; }

    /// Sorted vertex list of part j.
    const std::vector<Vertex>& part(int j) const { return parts_[j]; }
    const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
    int part_of(Vertex v) const { return part_of_[v]; }

    /// Same graph and partition, different color budget.
    Instance with_k(int k) const { return Instance(graph_, parts_, k); }
    Instance with_graph(Graph g) const { return Instance(std::move(g), parts_, k_); }

private:
    Graph graph_;
    std::vector<std::vector<Vertex>> parts_;
    std::vector<int> part_of_;
    int k_;
};

/// A claimed answer: a selection plus either a coloring or a clique partition.
struct Solution {
    std::vector<Vertex> selected;                            // sorted
    std::optional<std::map<Vertex, Color>> coloring;         // colors 1..k
    std::optional<std::vector<std::vector<Vertex>>> cliques;

    friend bool operator==(const Solution&, const Solution&) = default;
};

enum class Answer { yes, no, exhausted };

const char* to_string(Answer a);

struct SolverStats {
    std::string solver;
    std::map<std::string, std::int64_t> params;
    std::vector<std::string> notes;
    double elapsed_ms = 0.0;
};

struct Verdict {
    Answer answer = Answer::no;
    std::optional<Solution> witness;
    SolverStats stats;
};

/// Builds a coloring Solution from a color vector indexed like `selected`.
Solution make_colored_solution(std::vector<Vertex> selected, const std::vector<Color>& colors);

}  // namespace selcol
