#pragma once

// Naive reference implementations for the tests. Nothing here shares code with the
// library algorithms beyond the plain data types.

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "selcol/graph.hpp"
#include "selcol/instance.hpp"
#include "selcol/max_flow.hpp"
#include "selcol/tree_decomposition.hpp"

namespace ref {

using selcol::Color;
using selcol::Edge;
using selcol::Graph;
using selcol::Instance;
using selcol::Vertex;

// Plain backtracking in the given vertex order, colors 1..k, no heuristics.
inline bool colorable(const Graph& g, const std::vector<Vertex>& verts, int k,
                      const std::map<Vertex, Color>& fixed = {})
{
    std::vector<Color> col(static_cast<std::size_t>(g.num_vertices()), 0);
    std::vector<char> in(col.size(), 0);
    for (Vertex v : verts)
        in[v] = 1;
    for (auto [v, c] : fixed) {
        if (c < 1 || c > k)
            return false;
        col[v] = c;
    }
    for (auto [v, c] : fixed)
        for (Vertex u : g.neighbors(v))
            if (in[u] && col[u] == c)
                return false;
    std::vector<Vertex> todo;
    for (Vertex v : verts)
        if (!fixed.count(v))
            todo.push_back(v);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == todo.size())
            return true;
        Vertex v = todo[i];
        for (Color c = 1; c <= k; ++c) {
            bool ok = true;
            for (Vertex u : g.neighbors(v))
                if (in[u] && col[u] == c)
                    ok = false;
            if (!ok)
                continue;
            col[v] = c;
            if (go(i + 1))
                return true;
            col[v] = 0;
        }
        return false;
    };
    return go(0);
}

inline int chromatic_number(const Graph& g, const std::vector<Vertex>& verts)
{
    int c = 0;
    while (!colorable(g, verts, c))
        ++c;
    return c;
}

// Calls fn on every choice of one vertex per part (indexed like inst.parts()).
inline void for_each_selection(const Instance& inst, const std::function<void(const std::vector<Vertex>&)>& fn)
{
    std::vector<Vertex> sel(static_cast<std::size_t>(inst.num_parts()));
    std::function<void(int)> go = [&](int j) {
        if (j == inst.num_parts()) {
            fn(sel);
            return;
        }
        for (Vertex v : inst.part(j)) {
            sel[j] = v;
            go(j + 1);
        }
    };
    go(0);
}

inline bool selective(const Instance& inst, const std::map<Vertex, Color>& fixed = {})
{
    bool found = false;
    for_each_selection(inst, [&](const std::vector<Vertex>& sel) {
        if (found)
            return;
        for (auto [v, c] : fixed)
            if (std::find(sel.begin(), sel.end(), v) == sel.end())
                return;
        found = colorable(inst.graph(), sel, inst.k(), fixed);
    });
    return found;
}

// Set partitions of `items` into at most max_blocks blocks (restricted growth strings).
inline void for_each_partition(const std::vector<Vertex>& items, int max_blocks,
                               const std::function<void(const std::vector<std::vector<Vertex>>&)>& fn)
{
    std::vector<std::vector<Vertex>> blocks;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == items.size()) {
            fn(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(items[i]);
            go(i + 1);
            blocks[b].pop_back();
        }
        if (static_cast<int>(blocks.size()) < max_blocks) {
            blocks.push_back({items[i]});
            go(i + 1);
            blocks.pop_back();
        }
    };
    go(0);
}

inline std::vector<std::vector<Vertex>> subsets(const std::vector<Vertex>& s)
{
    std::vector<std::vector<Vertex>> out;
    for (unsigned m = 0; m < (1U << s.size()); ++m) {
        std::vector<Vertex> one;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (m >> i & 1U)
                one.push_back(s[i]);
        out.push_back(one);
    }
    return out;
}

// Union of bags in the subtree of `node`.
inline std::vector<Vertex> subtree_vertices(const selcol::NiceTreeDecomposition& ntd, int node)
{
    std::set<Vertex> acc;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        acc.insert(ntd.nodes[x].bag.begin(), ntd.nodes[x].bag.end());
        for (int c : ntd.nodes[x].children)
            stack.push_back(c);
    }
    return {acc.begin(), acc.end()};
}

// Direct check of the three axioms plus tree shape.
inline bool td_ok(const Graph& g, const selcol::TreeDecomposition& td)
{
    const int m = static_cast<int>(td.bags.size());
    if (m == 0)
        return g.num_vertices() == 0;
    if (static_cast<int>(td.edges.size()) != m - 1)
        return false;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
    for (auto [a, b] : td.edges) {
        if (a < 0 || b < 0 || a >= m || b >= m)
            return false;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    auto reach = [&](const std::vector<char>& allowed, int start) {
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        std::vector<int> st{start};
        seen[start] = 1;
        int count = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[x])
                if (allowed[y] && !seen[y]) {
                    seen[y] = 1;
                    ++count;
                    st.push_back(y);
                }
        }
        return count;
    };
    if (reach(std::vector<char>(static_cast<std::size_t>(m), 1), 0) != m)
        return false;
    auto contains = [&](int node, Vertex v) {
        return std::find(td.bags[node].begin(), td.bags[node].end(), v) != td.bags[node].end();
    };
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        std::vector<char> allowed(static_cast<std::size_t>(m), 0);
        int first = -1, count = 0;
        for (int x = 0; x < m; ++x)
            if (contains(x, v)) {
                allowed[x] = 1;
                ++count;
                if (first < 0)
                    first = x;
            }
        if (count == 0 || reach(allowed, first) != count)
            return false;
    }
    for (auto [u, v] : g.edges()) {
        bool hit = false;
        for (int x = 0; x < m && !hit; ++x)
            hit = contains(x, u) && contains(x, v);
        if (!hit)
            return false;
    }
    return true;
}

// Edmonds-Karp on a dense capacity matrix.
inline std::int64_t max_flow_value(const selcol::FlowGraph& net)
{
    const int n = net.num_nodes;
    std::vector<std::vector<std::int64_t>> cap(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    for (const auto& a : net.arcs)
        cap[a.from][a.to] += a.capacity;
    std::int64_t total = 0;
    while (true) {
        std::vector<int> prev(static_cast<std::size_t>(n), -1);
        std::queue<int> q;
        q.push(net.source);
        prev[net.source] = net.source;
        while (!q.empty() && prev[net.sink] < 0) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v)
                if (prev[v] < 0 && cap[u][v] > 0) {
                    prev[v] = u;
                    q.push(v);
                }
        }
        if (prev[net.sink] < 0 || net.source == net.sink)
            return total;
        std::int64_t push = INT64_MAX;
        for (int v = net.sink; v != net.source; v = prev[v])
            push = std::min(push, cap[prev[v]][v]);
        for (int v = net.sink; v != net.source; v = prev[v]) {
            cap[prev[v]][v] -= push;
            cap[v][prev[v]] += push;
        }
        total += push;
    }
}

// Minimum s-t cut by enumerating source sides; only for tiny networks.
inline std::int64_t min_cut_value(const selcol::FlowGraph& net)
{
    const int n = net.num_nodes;
    std::int64_t best = INT64_MAX;
    for (unsigned m = 0; m < (1U << n); ++m) {
        if (!(m >> net.source & 1U) || (m >> net.sink & 1U))
            continue;
        std::int64_t c = 0;
        for (const auto& a : net.arcs)
            if ((m >> a.from & 1U) && !(m >> a.to & 1U))
                c += a.capacity;
        best = std::min(best, c);
    }
    return best;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double prob)
{
    std::bernoulli_distribution coin(prob);
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng))
                e.emplace_back(u, v);
    return Graph::from_edges(n, e);
}

inline Instance random_instance(std::mt19937_64& rng, int n, double prob, int p, int k)
{
    Graph g = random_graph(rng, n, prob);
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(p));
    for (int i = 0; i < n; ++i)
        parts[i < p ? i : std::uniform_int_distribution<int>(0, p - 1)(rng)].push_back(order[i]);
    return Instance(g, parts, k);
}

// Cluster graph plus `extra` modulator vertices with random edges; labels shuffled.
inline Instance random_cluster_instance(std::mt19937_64& rng, int n, int extra, double prob, int p, int k)
{
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(prob);
    std::vector<Edge> e;
    int start = 0;
    while (start < n - extra) {
        int len = std::uniform_int_distribution<int>(1, 3)(rng);
        int end = std::min(n - extra, start + len);
        for (int a = start; a < end; ++a)
            for (int b = a + 1; b < end; ++b)
                e.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
        start = end;
    }
    for (int a = n - extra; a < n; ++a)
        for (int b = 0; b < a; ++b)
            if (coin(rng))
                e.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
    std::vector<Vertex> order = perm;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(p));
    for (int i = 0; i < n; ++i)
        parts[i < p ? i : std::uniform_int_distribution<int>(0, p - 1)(rng)].push_back(order[i]);
    return Instance(Graph::from_edges(n, e), parts, k);
}

inline Instance sample()
{
    std::vector<Edge> e{{0, 1}, {0, 2}, {0, 4}, {0, 6}, {1, 6}, {1, 3}, {1, 5}, {2, 3}, {4, 5}};
    return Instance(Graph::from_edges(7, e), {{0, 4, 6}, {1, 3}, {2}, {5}}, 2);
}

}  // namespace ref
