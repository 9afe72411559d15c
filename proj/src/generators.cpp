#include "selcol/generators.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace selcol {

namespace {

// Distribution objects are implementation-defined, so draws are derived by hand.
double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do
        x = rng();
    while (x >= limit);
    return x % bound;
}

Edge normalized(Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; }

}  // namespace

Instance gen_random(int n, double edge_prob, int p, int k, std::uint64_t seed)
{
    if (n < 1)
        throw std::invalid_argument("n must be at least 1");
    if (p < 1 || p > n)
        throw std::invalid_argument("need 1 <= p <= n, got p = " + std::to_string(p) +
                                    ", n = " + std::to_string(n));
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        throw std::invalid_argument("edge probability must lie in [0, 1]");

    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (uniform01(rng) < edge_prob)
                edges.emplace_back(u, v);

    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        order[v] = v;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);

    std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(p));
    for (int i = 0; i < n; ++i)
        parts[i % p].push_back(order[i]);
    return Instance(Graph::from_edges(n, edges), std::move(parts), k);
}

Vertex ComposeLayout::a(Vertex v, int i, Vertex u) const
{
    return v * gadget_size() + i * (n - 1) + (u < v ? u : u - 1);
}

Vertex ComposeLayout::q(Vertex v, int clique, int idx) const
{
    return v * gadget_size() + 4 * (n - 1) + clique * (k - 1) + idx;
}

Instance compose(const ComposeInput& in)
{
    const int n = in.ground_n;
    const int k = in.k;
    const int t = static_cast<int>(in.graphs.size());
    if (n < 1)
        throw std::invalid_argument("ground set must be nonempty");
    if (k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (t < 1)
        throw std::invalid_argument("need at least one input graph");

    std::vector<std::vector<std::vector<char>>> adj(
        static_cast<std::size_t>(t),
        std::vector<std::vector<char>>(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0)));
    for (int j = 0; j < t; ++j) {
        for (auto [u, v] : in.graphs[j]) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("graph " + std::to_string(j + 1) + ": edge " +
                                            std::to_string(u + 1) + " " + std::to_string(v + 1) +
                                            " outside ground set [" + std::to_string(n) + "]");
            if (u == v)
                throw std::invalid_argument("graph " + std::to_string(j + 1) + ": self-loop at " +
                                            std::to_string(u + 1));
            adj[j][u][v] = adj[j][v][u] = 1;
        }
        if (in.require_regular)
            for (Vertex v = 0; v < n; ++v)
                if (std::count(adj[j][v].begin(), adj[j][v].end(), 1) != 4)
                    throw std::invalid_argument("graph " + std::to_string(j + 1) + " is not 4-regular");
    }

    const ComposeLayout L{n, k, t};
    std::set<Edge> edges;
    auto add = [&](Vertex a, Vertex b) { edges.insert(normalized({a, b})); };
    const int qsize = k - 1;
    // Q_12, Q_13, Q_23 sit over the pairs of A sets; Q_e over A_e.
    const int q_sides[4][2] = {{0, 1}, {0, 2}, {1, 2}, {3, 3}};

    for (Vertex v = 0; v < n; ++v) {
        for (int i = 0; i < 3; ++i)
            for (int i2 = i + 1; i2 < 3; ++i2)
                for (Vertex u = 0; u < n; ++u)
                    for (Vertex u2 = 0; u2 < n; ++u2)
                        if (u != v && u2 != v)
                            add(L.a(v, i, u), L.a(v, i2, u2));
        for (int c = 0; c < 4; ++c) {
            for (int x = 0; x < qsize; ++x) {
                for (int x2 = x + 1; x2 < qsize; ++x2)
                    add(L.q(v, c, x), L.q(v, c, x2));
                for (int side : {q_sides[c][0], q_sides[c][1]})
                    for (Vertex u = 0; u < n; ++u)
                        if (u != v)
                            add(L.q(v, c, x), L.a(v, side, u));
            }
        }
    }

    for (int j = 0; j < t; ++j) {
        for (Vertex v = 0; v < n; ++v) {
            for (int c = 0; c < 4; ++c)
                for (int x = 0; x < qsize; ++x)
                    add(L.y(j), L.q(v, c, x));
            for (Vertex u = 0; u < n; ++u) {
                if (u == v)
                    continue;
                if (adj[j][v][u])
                    add(L.y(j), L.a(v, 3, u));
                else
                    for (int i = 0; i < 3; ++i)
                        add(L.y(j), L.a(v, i, u));
            }
        }
    }

    for (Vertex v = 0; v < n; ++v)
        for (Vertex u = v + 1; u < n; ++u) {
            bool any = false;
            for (int j = 0; j < t && !any; ++j)
                any = adj[j][u][v] != 0;
            if (any)
                for (int i = 0; i < 3; ++i)
                    add(L.a(v, i, u), L.a(u, i, v));
        }

    std::vector<std::vector<Vertex>> parts;
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u = 0; u < n; ++u)
            if (u != v)
                parts.push_back({L.a(v, 0, u), L.a(v, 1, u), L.a(v, 2, u), L.a(v, 3, u)});
        for (int c = 0; c < 4; ++c)
            for (int x = 0; x < qsize; ++x)
                parts.push_back({L.q(v, c, x)});
    }
    std::vector<Vertex> ys;
    for (int j = 0; j < t; ++j)
        ys.push_back(L.y(j));
    parts.push_back(std::move(ys));

    std::vector<Edge> list(edges.begin(), edges.end());
    return Instance(Graph::from_edges(L.num_vertices(), list), std::move(parts), k);
}

Graph complete_graph(int n)
{
    if (n < 1)
        throw std::invalid_argument("K_n needs n >= 1");
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            e.emplace_back(u, v);
    return Graph::from_edges(n, e);
}

Graph cycle_graph(int n)
{
    if (n < 3)
        throw std::invalid_argument("C_n needs n >= 3");
    std::vector<Edge> e;
    for (Vertex v = 0; v < n; ++v)
        e.push_back(normalized({v, (v + 1) % n}));
    return Graph::from_edges(n, e);
}

Graph path_graph(int n)
{
    if (n < 1)
        throw std::invalid_argument("P_n needs n >= 1");
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v)
        e.emplace_back(v, v + 1);
    return Graph::from_edges(n, e);
}

Graph complete_bipartite(int a, int b)
{
    if (a < 1 || b < 1)
        throw std::invalid_argument("K_{a,b} needs a, b >= 1");
    std::vector<Edge> e;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = a; v < a + b; ++v)
            e.emplace_back(u, v);
    return Graph::from_edges(a + b, e);
}

// outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
Graph petersen_graph()
{
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.push_back(normalized({i, (i + 1) % 5}));
        e.push_back(normalized({5 + i, 5 + (i + 2) % 5}));
        e.emplace_back(i, i + 5);
    }
    return Graph::from_edges(10, e);
}

Graph named_graph(const std::string& name, const std::map<std::string, int>& params)
{
    auto get = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("graph " + name + " needs parameter " + key);
        return it->second;
    };
    if (name == "petersen" || name == "Petersen")
        return petersen_graph();
    if (name == "K" && params.count("a"))
        return complete_bipartite(get("a"), get("b"));
    if (name == "K")
        return complete_graph(get("n"));
    if (name == "C")
        return cycle_graph(get("n"));
    if (name == "P")
        return path_graph(get("n"));
    throw std::invalid_argument("unknown graph name: " + name);
}

Graph parse_named_graph(const std::string& spec)
{
    if (spec == "petersen" || spec == "Petersen")
        return petersen_graph();
    auto number = [&](const std::string& s) {
        if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad graph name: " + spec);
        return std::stoi(s);
    };
    if (spec.size() < 2)
        throw std::invalid_argument("bad graph name: " + spec);
    const std::string head = spec.substr(0, 1), rest = spec.substr(1);
    if (head == "K") {
        auto comma = rest.find(',');
        if (comma != std::string::npos)
            return complete_bipartite(number(rest.substr(0, comma)), number(rest.substr(comma + 1)));
    }
    return named_graph(head, {{"n", number(rest)}});
}

}  // namespace selcol
