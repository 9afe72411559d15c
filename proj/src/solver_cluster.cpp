#include "selcol/solver_cluster.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace selcol {

std::optional<std::array<Vertex, 3>> find_induced_p3(const Graph& g, const std::vector<char>& removed)
{
    for (Vertex mid = 0; mid < g.num_vertices(); ++mid) {
        if (removed[mid])
            continue;
        const auto& nb = g.neighbors(mid);
        for (std::size_t a = 0; a < nb.size(); ++a) {
            if (removed[nb[a]])
                continue;
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                if (removed[nb[b]])
                    continue;
                if (!g.adjacent(nb[a], nb[b]))
                    return std::array<Vertex, 3>{nb[a], mid, nb[b]};
            }
        }
    }
    return std::nullopt;
}

ClusterStructure make_cluster_structure(const Graph& g, std::vector<Vertex> modulator)
{
    const int n = g.num_vertices();
    std::sort(modulator.begin(), modulator.end());
    modulator.erase(std::unique(modulator.begin(), modulator.end()), modulator.end());
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    for (Vertex u : modulator) {
        if (u < 0 || u >= n)
            throw std::invalid_argument("modulator vertex out of range");
        removed[u] = 1;
    }
    ClusterStructure cs;
    cs.modulator = modulator;
    std::vector<char> seen(removed);
    for (Vertex v = 0; v < n; ++v) {
        if (seen[v])
            continue;
        std::vector<Vertex> comp{v};
        seen[v] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex w : g.neighbors(comp[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        for (std::size_t a = 0; a < comp.size(); ++a)
            for (std::size_t b = a + 1; b < comp.size(); ++b)
                if (!g.adjacent(comp[a], comp[b]))
                    throw std::invalid_argument("G - U is not a cluster graph: v" +
                                                std::to_string(comp[a] + 1) + " and v" +
                                                std::to_string(comp[b] + 1) +
                                                " share a component but are not adjacent");
        cs.clusters.push_back(std::move(comp));
    }
    return cs;
}

namespace {

// Vertex-disjoint induced P3s found greedily; each needs its own deletion.
int p3_packing(const Graph& g, std::vector<char> removed, int stop_above)
{
    int count = 0;
    while (count <= stop_above) {
        auto p3 = find_induced_p3(g, removed);
        if (!p3)
            break;
        for (Vertex v : *p3)
            removed[v] = 1;
        ++count;
    }
    return count;
}

class ModulatorBrancher {
public:
    explicit ModulatorBrancher(const Graph& g)
        : g_(g), removed_(static_cast<std::size_t>(g.num_vertices()), 0)
    {
    }

    bool search(int budget)
    {
        ++nodes_;
        auto p3 = find_induced_p3(g_, removed_);
        if (!p3)
            return true;
        if (budget == 0 || p3_packing(g_, removed_, budget) > budget)
            return false;
        if (!seen_.insert(current()).second)
            return false;
        for (Vertex v : {(*p3)[1], (*p3)[0], (*p3)[2]}) {
            removed_[v] = 1;
            chosen_.push_back(v);
            if (search(budget - 1))
                return true;
            chosen_.pop_back();
            removed_[v] = 0;
        }
        return false;
    }

    void reset() { seen_.clear(); }
    const std::vector<Vertex>& chosen() const { return chosen_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    std::vector<Vertex> current() const
    {
        auto s = chosen_;
        std::sort(s.begin(), s.end());
        return s;
    }

    const Graph& g_;
    std::vector<char> removed_;
    std::vector<Vertex> chosen_;
    std::set<std::vector<Vertex>> seen_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

ModulatorSearch find_cluster_modulator(const Graph& g, int d_max)
{
    if (d_max < 0)
        throw std::invalid_argument("d_max must be non-negative");
    ModulatorSearch out;
    ModulatorBrancher br(g);
    const int packing = p3_packing(g, std::vector<char>(static_cast<std::size_t>(g.num_vertices()), 0), d_max);
    for (int d = packing; d <= d_max; ++d) {
        br.reset();
        if (br.search(d)) {
            out.structure = make_cluster_structure(g, br.chosen());
            out.lower_bound = d;
            out.branch_nodes = br.nodes();
            return out;
        }
    }
    out.lower_bound = std::max(d_max + 1, packing);
    out.branch_nodes = br.nodes();
    return out;
}

std::string ClusterFlowNetwork::node_name(int node) const
{
    const auto& info = nodes[node];
    switch (info.role) {
    case FlowRole::source: return "s";
    case FlowRole::sink: return "t";
    case FlowRole::color: return "a" + std::to_string(info.first + 1);
    case FlowRole::guard:
        return "w" + std::to_string(info.first + 1) + "," + std::to_string(info.second + 1);
    case FlowRole::vertex: return "v" + std::to_string(info.first + 1);
    case FlowRole::part: return "rho" + std::to_string(info.first + 1);
    }
    return "?";
}

std::vector<int> ClusterFlowNetwork::arcs_of(ArcFamily f) const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < family.size(); ++i)
        if (family[i] == f)
            out.push_back(static_cast<int>(i));
    return out;
}

namespace {

void check_precoloring(const Instance& inst, const ClusterStructure& cs,
                       const std::vector<Precolored>& pre)
{
    std::vector<char> part_hit(static_cast<std::size_t>(inst.num_parts()), 0);
    for (auto [v, c] : pre) {
        if (!std::binary_search(cs.modulator.begin(), cs.modulator.end(), v))
            throw std::invalid_argument("precolored vertex v" + std::to_string(v + 1) +
                                        " is not in the modulator");
        if (c < 1 || c > inst.k())
            throw std::invalid_argument("precolor " + std::to_string(c) + " outside 1..k");
        if (part_hit[inst.part_of(v)]++)
            throw std::invalid_argument("X hits part " + std::to_string(inst.part_of(v) + 1) +
                                        " twice");
    }
    for (std::size_t a = 0; a < pre.size(); ++a)
        for (std::size_t b = a + 1; b < pre.size(); ++b)
            if (pre[a].second == pre[b].second && inst.graph().adjacent(pre[a].first, pre[b].first))
                throw std::invalid_argument("precoloring is improper on edge v" +
                                            std::to_string(pre[a].first + 1) + "v" +
                                            std::to_string(pre[b].first + 1));
}

}  // namespace

ClusterFlowNetwork build_flow_network(const Instance& inst, const ClusterStructure& cs,
                                      const std::vector<Precolored>& precoloring)
{
    check_precoloring(inst, cs, precoloring);
    const int k = inst.k();
    const int p = inst.num_parts();
    const int r = static_cast<int>(cs.clusters.size());
    const Graph& g = inst.graph();

    ClusterFlowNetwork net;
    auto node = [&](FlowRole role, int first = -1, int second = -1) {
        net.nodes.push_back({role, first, second});
        return net.graph.add_node();
    };
    auto arc = [&](int from, int to, std::int64_t cap, ArcFamily f) {
        net.family.push_back(f);
        net.graph.add_arc(from, to, cap);
    };

    net.graph.source = node(FlowRole::source);
    net.graph.sink = node(FlowRole::sink);
    std::vector<int> color_node(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        color_node[i] = node(FlowRole::color, i);
    std::vector<int> guard_node(static_cast<std::size_t>(k) * r);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j)
            guard_node[static_cast<std::size_t>(i) * r + j] = node(FlowRole::guard, i, j);
    std::vector<int> vertex_node(static_cast<std::size_t>(g.num_vertices()), -1);
    for (const auto& c : cs.clusters)
        for (Vertex v : c)
            vertex_node[v] = node(FlowRole::vertex, v);
    std::vector<int> part_node(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j)
        part_node[j] = node(FlowRole::part, j);

    // neighbor_color[v][i]: v has a neighbor in X colored i + 1
    std::vector<std::vector<char>> neighbor_color(static_cast<std::size_t>(g.num_vertices()));
    std::vector<char> part_hit(static_cast<std::size_t>(p), 0);
    for (auto [x, c] : precoloring) {
        part_hit[inst.part_of(x)] = 1;
        for (Vertex w : g.neighbors(x)) {
            auto& row = neighbor_color[w];
            if (row.empty())
                row.assign(static_cast<std::size_t>(k), 0);
            row[c - 1] = 1;
        }
    }

    for (int i = 0; i < k; ++i)
        arc(net.graph.source, color_node[i], p, ArcFamily::S);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j)
            arc(color_node[i], guard_node[static_cast<std::size_t>(i) * r + j], 1, ArcFamily::F);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j)
            for (Vertex v : cs.clusters[j])
                if (neighbor_color[v].empty() || !neighbor_color[v][i])
                    arc(guard_node[static_cast<std::size_t>(i) * r + j], vertex_node[v], 1, ArcFamily::R);
    for (const auto& c : cs.clusters)
        for (Vertex v : c)
            arc(vertex_node[v], part_node[inst.part_of(v)], 1, ArcFamily::L);
    for (int j = 0; j < p; ++j)
        if (!part_hit[j])
            arc(part_node[j], net.graph.sink, 1, ArcFamily::T);
    return net;
}

Extension extend_precoloring(const Instance& inst, const ClusterStructure& cs,
                             const std::vector<Precolored>& precoloring)
{
    Extension ext;
    ext.network = build_flow_network(inst, cs, precoloring);
    ext.flow = max_flow(ext.network.graph);
    ext.required = inst.num_parts() - static_cast<std::int64_t>(precoloring.size());
    if (ext.flow.value != ext.required)
        return ext;

    const auto& net = ext.network;
    std::vector<Vertex> selected;
    std::vector<Color> colors;
    for (auto [x, c] : precoloring) {
        selected.push_back(x);
        colors.push_back(c);
    }
    std::vector<Color> cluster_color(static_cast<std::size_t>(inst.num_vertices()), 0);
    for (int a : net.arcs_of(ArcFamily::R))
        if (ext.flow.flow[a] == 1) {
            const auto& arc = net.graph.arcs[a];
            cluster_color[net.nodes[arc.to].first] = net.nodes[arc.from].first + 1;
        }
    for (int a : net.arcs_of(ArcFamily::L))
        if (ext.flow.flow[a] == 1) {
            Vertex v = net.nodes[net.graph.arcs[a].from].first;
            selected.push_back(v);
            colors.push_back(cluster_color[v]);
        }
    ext.solution = make_colored_solution(selected, colors);
    return ext;
}

std::string dump_flow(const ClusterFlowNetwork& net, const FlowResult& flow)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < net.graph.arcs.size(); ++i) {
        const auto& a = net.graph.arcs[i];
        os << net.node_name(a.from) << ' ' << net.node_name(a.to) << ' ' << a.capacity << ' '
           << (i < flow.flow.size() ? flow.flow[i] : 0) << '\n';
    }
    return os.str();
}

namespace {

// Calls fn(precoloring) for each proper coloring of X in enumeration order; stops
// when fn returns true. Canonical mode enumerates set partitions (restricted growth
// strings) into at most k independent blocks.
bool for_each_precoloring(const Instance& inst, const std::vector<Vertex>& x, bool labeled,
                          const std::function<bool(const std::vector<Precolored>&)>& fn)
{
    std::vector<Precolored> cur;
    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int used) -> bool {
        if (i == x.size())
            return fn(cur);
        const int top = labeled ? inst.k() : std::min(used + 1, inst.k());
        for (int c = 1; c <= top; ++c) {
            bool ok = true;
            for (auto [y, cy] : cur)
                if (cy == c && inst.graph().adjacent(x[i], y)) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            cur.emplace_back(x[i], c);
            if (rec(i + 1, std::max(used, c)))
                return true;
            cur.pop_back();
        }
        return false;
    };
    return rec(0, 0);
}

// Subsets of U by increasing size, then lexicographically; at most one vertex per part.
std::vector<std::vector<Vertex>> candidate_subsets(const Instance& inst, const std::vector<Vertex>& u)
{
    std::vector<std::vector<Vertex>> out;
    const int m = static_cast<int>(u.size());
    for (int size = 0; size <= m; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i)
            idx[i] = i;
        while (true) {
            std::vector<Vertex> x;
            std::set<int> parts;
            bool ok = true;
            for (int i : idx) {
                x.push_back(u[i]);
                ok &= parts.insert(inst.part_of(u[i])).second;
            }
            if (ok)
                out.push_back(std::move(x));
            int i = size - 1;
            while (i >= 0 && idx[i] == m - size + i)
                --i;
            if (i < 0)
                break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

struct SubsetOutcome {
    std::int64_t networks = 0;
    std::optional<Solution> solution;
};

}  // namespace

Verdict solve_cluster(const Instance& inst, const ClusterStructure& cs, const ClusterOptions& opts)
{
    auto start = std::chrono::steady_clock::now();
    if (opts.dump_dir)
        std::filesystem::create_directories(*opts.dump_dir);

    auto subsets = candidate_subsets(inst, cs.modulator);
    const int count = static_cast<int>(subsets.size());
    std::vector<SubsetOutcome> outcomes(static_cast<std::size_t>(count));
    std::atomic<int> best{INT_MAX};

    auto evaluate = [&](int xi) {
        auto& out = outcomes[xi];
        for_each_precoloring(inst, subsets[xi], opts.labeled_colorings,
                             [&](const std::vector<Precolored>& pre) {
                                 auto ext = extend_precoloring(inst, cs, pre);
                                 if (opts.dump_dir) {
                                     std::ofstream f(std::filesystem::path(*opts.dump_dir) /
                                                     ("flow_" + std::to_string(xi) + "_" +
                                                      std::to_string(out.networks) + ".txt"));
                                     f << dump_flow(ext.network, ext.flow);
                                 }
                                 ++out.networks;
                                 if (ext.solution) {
                                     out.solution = std::move(ext.solution);
                                     return true;
                                 }
                                 return false;
                             });
        if (out.solution) {
            int cur = best.load();
            while (xi < cur && !best.compare_exchange_weak(cur, xi)) {
            }
        }
    };

    if (opts.threads <= 1) {
        for (int xi = 0; xi < count && best.load() == INT_MAX; ++xi)
            evaluate(xi);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        for (int t = 0; t < opts.threads; ++t)
            workers.emplace_back([&] {
                for (int xi = next++; xi < count; xi = next++)
                    if (xi < best.load())
                        evaluate(xi);
            });
        for (auto& w : workers)
            w.join();
    }

    Verdict v;
    v.stats.solver = "cluster";
    v.stats.params["modulator"] = static_cast<std::int64_t>(cs.modulator.size());
    v.stats.params["clusters"] = static_cast<std::int64_t>(cs.clusters.size());
    v.stats.params["p"] = inst.num_parts();
    v.stats.params["k"] = inst.k();
    v.stats.params["n"] = inst.num_vertices();
    const int hit = best.load();
    std::int64_t networks = 0;
    for (int xi = 0; xi < count && xi <= hit; ++xi)
        networks += outcomes[xi].networks;
    v.stats.params["networks"] = networks;
    if (hit != INT_MAX) {
        v.answer = Answer::yes;
        v.witness = outcomes[hit].solution;
    } else {
        v.answer = Answer::no;
    }
    v.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return v;
}

Verdict solve_cluster(const Instance& inst, const ClusterOptions& opts)
{
    auto search = find_cluster_modulator(inst.graph(), opts.d_max);
    if (!search.structure)
        throw CapacityError("distance to cluster exceeds d_max = " + std::to_string(opts.d_max) +
                            " (lower bound " + std::to_string(search.lower_bound) + ")");
    return solve_cluster(inst, *search.structure, opts);
}

}  // namespace selcol
