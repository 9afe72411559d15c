#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "selcol/instance.hpp"
#include "selcol/solver_cluster.hpp"
#include "selcol/tree_decomposition.hpp"

namespace selcol {

/// B_n as a double (exact up to n = 25 or so, then approximate).
double bell_number(int n);

struct InstanceParams {
    int n = 0;
    int p = 0;
    int k = 0;
    int width = 0;                       // of the decomposition of G
    int cowidth = 0;                     // of the decomposition of the complement
    std::optional<int> modulator;        // distance to cluster, when at most d_max
    int modulator_lower_bound = 0;
    double selections = 0;               // product of part sizes
};

/// Computes every parameter. Missing decompositions are built heuristically.
InstanceParams measure(const Instance& inst, int d_max, const std::optional<TreeDecomposition>& td = {},
                       const std::optional<TreeDecomposition>& cotd = {});

struct CostEstimate {
    std::string algo;  // tw, cluster, cotw, brute
    double cost = std::numeric_limits<double>::infinity();
    std::string note;  // why infinite or trivial
};

struct DispatchLimits {
    double ceiling = 1e9;
    int max_parts = 24;
};

/// Cost envelopes in the order tw, cluster, cotw, brute.
std::vector<CostEstimate> estimate_costs(const InstanceParams& ip, const DispatchLimits& lim = {});

struct DispatchChoice {
    InstanceParams params;
    std::vector<CostEstimate> estimates;
    std::string algo;
    std::string rationale;
};

class NoTractableStrategy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cheapest estimate at or below the ceiling (ties go to the earlier algorithm). When
/// none qualifies, `force` picks the cheapest finite one; otherwise throws
/// NoTractableStrategy listing the parameters and estimates.
DispatchChoice choose_algorithm(const InstanceParams& ip, const DispatchLimits& lim, bool force);

std::string describe(const InstanceParams& ip);

}  // namespace selcol
