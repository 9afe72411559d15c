#pragma once

#include <string>
#include <vector>

#include "selcol/instance.hpp"

namespace selcol {

/// Checks a witness without trusting any solver. Returns the list of violations;
/// an empty list means the solution is valid.
///
/// Valid means: `selected` has exactly one vertex per part, and either the coloring
/// is proper on G[selected] with colors in 1..k, or the cliques (at most k) partition
/// `selected` into cliques of G. When both are present both are checked.
std::vector<std::string> verify_solution(const Instance& inst, const Solution& sol);

inline bool is_valid_solution(const Instance& inst, const Solution& sol)
{
    return verify_solution(inst, sol).empty();
}

}  // namespace selcol
