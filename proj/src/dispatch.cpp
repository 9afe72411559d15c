#include "selcol/dispatch.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "selcol/solver_cotw.hpp"

namespace selcol {

double bell_number(int n)
{
    if (n < 0)
        return 0;
    // Bell triangle
    std::vector<double> row{1.0};
    for (int i = 0; i < n; ++i) {
        std::vector<double> next{row.back()};
        for (double x : row)
            next.push_back(next.back() + x);
        row = std::move(next);
    }
    return row.front();
}

InstanceParams measure(const Instance& inst, int d_max, const std::optional<TreeDecomposition>& td,
                       const std::optional<TreeDecomposition>& cotd)
{
    InstanceParams ip;
    ip.n = inst.num_vertices();
    ip.p = inst.num_parts();
    ip.k = inst.k();
    ip.width = width(td ? *td : heuristic_decompose(inst.graph()));
    ip.cowidth = width(cotd ? *cotd : heuristic_decompose(complement(inst.graph())));
    auto mod = find_cluster_modulator(inst.graph(), d_max);
    if (mod.structure)
        ip.modulator = static_cast<int>(mod.structure->modulator.size());
    ip.modulator_lower_bound = mod.lower_bound;
    ip.selections = 1;
    for (const auto& part : inst.parts())
        ip.selections *= static_cast<double>(part.size());
    return ip;
}

std::vector<CostEstimate> estimate_costs(const InstanceParams& ip, const DispatchLimits& lim)
{
    const double inf = std::numeric_limits<double>::infinity();
    const double n = ip.n, p = ip.p, k = ip.k;
    std::vector<CostEstimate> out;

    CostEstimate tw{"tw", inf, ""};
    if (ip.k >= ip.width + 2) {
        tw.cost = 1;
        tw.note = "trivial positive";
    } else if (ip.p > lim.max_parts) {
        tw.note = "p above part limit";
    } else if (ip.width + 1 > 15) {
        tw.note = "bag above 15 vertices";
    } else {
        tw.cost = std::pow(4.0, p) * bell_number(ip.width + 1) * (ip.width + 1) * n;
    }
    out.push_back(tw);

    CostEstimate cl{"cluster", inf, ""};
    if (ip.modulator) {
        const int u = *ip.modulator;
        cl.cost = std::pow(2.0, u) * bell_number(u) * n * n;
    } else {
        cl.note = "distance to cluster above d_max";
    }
    out.push_back(cl);

    CostEstimate co{"cotw", inf, ""};
    if (early_reject(ip.p, ip.k, ip.cowidth)) {
        co.cost = 1;
        co.note = "early reject";
    } else if (ip.p > lim.max_parts) {
        co.note = "p above part limit";
    } else if (ip.cowidth + 1 > 20) {
        co.note = "complement bag above 20 vertices";
    } else {
        const double w = std::max(ip.cowidth, 1);
        co.cost = std::pow(3.0, ip.cowidth + p) * k * k * w * w * n;
    }
    out.push_back(co);

    out.push_back({"brute", ip.selections * p * p, ""});
    return out;
}

std::string describe(const InstanceParams& ip)
{
    std::ostringstream os;
    os << "n=" << ip.n << " p=" << ip.p << " k=" << ip.k << " w=" << ip.width << " cow=" << ip.cowidth
       << " |U|=";
    if (ip.modulator)
        os << *ip.modulator;
    else
        os << ">=" << ip.modulator_lower_bound;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", ip.selections);
    os << " selections=" << buf;
    return os.str();
}

namespace {

std::string list_estimates(const std::vector<CostEstimate>& est)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < est.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", est[i].cost);
        os << (i ? ", " : "") << est[i].algo << "=" << buf;
        if (!est[i].note.empty())
            os << " (" << est[i].note << ")";
    }
    return os.str();
}

}  // namespace

DispatchChoice choose_algorithm(const InstanceParams& ip, const DispatchLimits& lim, bool force)
{
    DispatchChoice c;
    c.params = ip;
    c.estimates = estimate_costs(ip, lim);
    const CostEstimate* best = nullptr;
    for (const auto& e : c.estimates)
        if (std::isfinite(e.cost) && (!best || e.cost < best->cost))
            best = &e;
    if (!best || (best->cost > lim.ceiling && !force))
        throw NoTractableStrategy("no tractable strategy: " + describe(ip) + "; estimates " +
                                  list_estimates(c.estimates) + "; rerun with --force or a larger --ceiling");
    c.algo = best->algo;
    c.rationale = "chose " + best->algo + " among " + list_estimates(c.estimates);
    if (best->cost > lim.ceiling)
        c.rationale += " (forced past ceiling)";
    return c;
}

}  // namespace selcol
