#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "selcol/instance.hpp"

namespace selcol {

/// Search budget for the brute-force oracle. Running out yields Answer::exhausted.
struct OracleLimits {
    std::uint64_t max_nodes = 50'000'000;  // selection and coloring steps together
    std::chrono::milliseconds time_budget{60'000};
};

/// Exact k-coloring by DSATUR-ordered backtracking. Returns colors (1..k) indexed by
/// vertex, or nullopt when g is not k-colorable.
std::optional<std::vector<Color>> is_k_colorable(const Graph& g, int k);

/// Like is_k_colorable, but vertices with `precolor[v] != 0` keep that color.
/// Colors not used by the precoloring are interchangeable, so only the smallest
/// unused one is tried at each step.
std::optional<std::vector<Color>> extend_coloring(const Graph& g, int k,
                                                  const std::vector<Color>& precolor);

struct BruteForceOptions {
    OracleLimits limits;
    bool prune = true;  // reject a partial selection as soon as it stops being k-colorable
    std::vector<Vertex> excluded;  // never selected
};

/// Exhaustive search over one-vertex-per-part selections, smallest parts first.
Verdict brute_force(const Instance& inst, const BruteForceOptions& opts = {});

/// Forced vertex with its fixed color.
using ForcedVertex = std::pair<Vertex, Color>;

/// Decides whether some selective solution contains every forced vertex and has a
/// k-coloring agreeing with the forced colors. Throws std::invalid_argument when two
/// forced vertices share a part, a color is out of range, or the forced coloring is
/// improper.
Verdict restricted_brute_force(const Instance& inst, const std::vector<ForcedVertex>& forced,
                               const BruteForceOptions& opts = {});

}  // namespace selcol
