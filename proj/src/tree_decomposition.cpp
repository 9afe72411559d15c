#include "selcol/tree_decomposition.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <tuple>

#include "selcol/io.hpp"

namespace selcol {

namespace {

std::string vname(Vertex v) { return "v" + std::to_string(v + 1); }

struct Elimination {
    std::vector<Vertex> order;
    std::vector<std::vector<Vertex>> later_neighbors;  // indexed by vertex
};

// Dense bit rows for the fill-in simulation.
class BitRows {
public:
    explicit BitRows(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

    std::uint64_t* row(int v) { return bits_.data() + static_cast<std::size_t>(v) * words_; }
    const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }
    void set(int u, int v) { row(u)[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void clear(int u, int v) { row(u)[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    bool test(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1U; }
    int words() const { return words_; }

    std::vector<int> members(int v) const
    {
        std::vector<int> out;
        const auto* r = row(v);
        for (int w = 0; w < words_; ++w)
            for (std::uint64_t b = r[w]; b != 0; b &= b - 1)
                out.push_back(w * 64 + std::countr_zero(b));
        return out;
    }

private:
    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

Elimination eliminate_min_fill(const Graph& g)
{
    const int n = g.num_vertices();
    BitRows adj(n);
    for (auto [u, v] : g.edges()) {
        adj.set(u, v);
        adj.set(v, u);
    }
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    std::vector<long long> fill(static_cast<std::size_t>(n), 0);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<char> dirty(static_cast<std::size_t>(n), 1);

    auto recompute = [&](int v) {
        auto nb = adj.members(v);
        degree[v] = static_cast<int>(nb.size());
        long long missing = 0;
        const auto* rv = adj.row(v);
        for (int u : nb) {
            const auto* ru = adj.row(u);
            for (int w = 0; w < adj.words(); ++w)
                missing += std::popcount(rv[w] & ~ru[w]);
            missing -= 1;  // u itself
        }
        fill[v] = missing / 2;
        dirty[v] = 0;
    };

    Elimination out;
    out.later_neighbors.resize(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[v])
                continue;
            if (dirty[v])
                recompute(v);
            if (best == -1 || std::tie(fill[v], degree[v]) < std::tie(fill[best], degree[best]))
                best = v;
        }
        auto nb = adj.members(best);
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                adj.set(nb[a], nb[b]);
                adj.set(nb[b], nb[a]);
            }
        for (int u : nb) {
            adj.clear(u, best);
            dirty[u] = 1;
            for (int w : adj.members(u))
                dirty[w] = 1;
        }
        alive[best] = 0;
        out.order.push_back(best);
        out.later_neighbors[best] = std::move(nb);
    }
    return out;
}

}  // namespace

std::optional<std::string> validate_td(const Graph& g, const TreeDecomposition& td)
{
    const int n = g.num_vertices();
    const int nodes = static_cast<int>(td.bags.size());
    if (nodes == 0)
        return "decomposition has no nodes";
    if (static_cast<int>(td.edges.size()) != nodes - 1)
        return "tree: " + std::to_string(td.edges.size()) + " edges for " +
               std::to_string(nodes) + " nodes";

    std::vector<int> uf(static_cast<std::size_t>(nodes));
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x)
            x = uf[x] = uf[uf[x]];
        return x;
    };
    for (auto [a, b] : td.edges) {
        if (a < 0 || b < 0 || a >= nodes || b >= nodes)
            return "tree: edge references unknown node";
        int ra = find(a), rb = find(b);
        if (ra == rb)
            return "tree: cycle through nodes " + std::to_string(a + 1) + " and " +
                   std::to_string(b + 1);
        uf[ra] = rb;
    }

    std::vector<std::vector<int>> occurs(static_cast<std::size_t>(n));
    for (int i = 0; i < nodes; ++i) {
        const auto& bag = td.bags[i];
        for (std::size_t j = 0; j < bag.size(); ++j) {
            Vertex v = bag[j];
            if (v < 0 || v >= n)
                return "bag " + std::to_string(i + 1) + " holds vertex " + std::to_string(v + 1) +
                       " outside the graph";
            if (j > 0 && bag[j - 1] >= v)
                return "bag " + std::to_string(i + 1) + " is not sorted and duplicate-free";
            occurs[v].push_back(i);
        }
    }

    for (Vertex v = 0; v < n; ++v)
        if (occurs[v].empty())
            return "vertex coverage: " + vname(v) + " in no bag";

    for (auto [u, v] : g.edges()) {
        const auto& a = occurs[u];
        const auto& b = occurs[v];
        std::vector<int> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.empty())
            return "edge coverage: edge " + vname(u) + vname(v) + " in no bag";
    }

    // Occurrence sets induce subgraphs of a tree, so connected iff #edges = #nodes - 1.
    std::vector<int> inner(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : td.edges) {
        const auto& ba = td.bags[a];
        const auto& bb = td.bags[b];
        std::vector<Vertex> common;
        std::set_intersection(ba.begin(), ba.end(), bb.begin(), bb.end(), std::back_inserter(common));
        for (Vertex v : common)
            ++inner[v];
    }
    for (Vertex v = 0; v < n; ++v)
        if (inner[v] != static_cast<int>(occurs[v].size()) - 1)
            return "connectivity: nodes containing " + vname(v) + " do not form a subtree";
    return std::nullopt;
}

int width(const TreeDecomposition& td)
{
    std::size_t best = 0;
    for (const auto& b : td.bags)
        best = std::max(best, b.size());
    return best == 0 ? 0 : static_cast<int>(best) - 1;
}

bool is_degenerate(const TreeDecomposition& td)
{
    return std::all_of(td.bags.begin(), td.bags.end(), [](const auto& b) { return b.empty(); });
}

std::vector<Vertex> min_fill_order(const Graph& g) { return eliminate_min_fill(g).order; }

TreeDecomposition heuristic_decompose(const Graph& g)
{
    const int n = g.num_vertices();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.emplace_back();
        return td;
    }
    Elimination el = eliminate_min_fill(g);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pos[el.order[i]] = i;

    std::vector<int> roots;
    td.bags.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vertex v = el.order[i];
        auto bag = el.later_neighbors[v];
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags[i] = std::move(bag);
        const auto& later = el.later_neighbors[v];
        if (later.empty()) {
            roots.push_back(i);
            continue;
        }
        int parent = n;
        for (Vertex u : later)
            parent = std::min(parent, pos[u]);
        td.edges.emplace_back(i, parent);
    }
    for (std::size_t r = 1; r < roots.size(); ++r)
        td.edges.emplace_back(roots[r - 1], roots[r]);
    return td;
}

int NiceTreeDecomposition::width() const
{
    std::size_t best = 0;
    for (const auto& nd : nodes)
        best = std::max(best, nd.bag.size());
    return best == 0 ? 0 : static_cast<int>(best) - 1;
}

TreeDecomposition NiceTreeDecomposition::as_plain() const
{
    TreeDecomposition td;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        td.bags.push_back(nodes[i].bag);
        for (int c : nodes[i].children)
            td.edges.emplace_back(c, static_cast<int>(i));
    }
    return td;
}

namespace {

class NiceBuilder {
public:
    NiceTreeDecomposition ntd;

    int add(NiceKind kind, Vertex v, std::vector<Vertex> bag, std::vector<int> children)
    {
        ntd.nodes.push_back(NiceNode{kind, v, std::move(bag), std::move(children)});
        return static_cast<int>(ntd.nodes.size()) - 1;
    }

    int leaf() { return add(NiceKind::leaf, -1, {}, {}); }

    // Forgets from.bag \ to (ascending), then introduces to \ from.bag (ascending).
    int transition(int node, const std::vector<Vertex>& to)
    {
        std::vector<Vertex> bag = ntd.nodes[node].bag;
        std::vector<Vertex> drop, gain;
        std::set_difference(bag.begin(), bag.end(), to.begin(), to.end(), std::back_inserter(drop));
        std::set_difference(to.begin(), to.end(), bag.begin(), bag.end(), std::back_inserter(gain));
        for (Vertex v : drop) {
            bag.erase(std::find(bag.begin(), bag.end(), v));
            node = add(NiceKind::forget, v, bag, {node});
        }
        for (Vertex v : gain) {
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            node = add(NiceKind::introduce, v, bag, {node});
        }
        return node;
    }
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td)
{
    const int nodes = static_cast<int>(td.bags.size());
    NiceBuilder nb;
    if (nodes == 0) {
        nb.ntd.root = nb.leaf();
        return nb.ntd;
    }

    int root = 0;
    for (int i = 1; i < nodes; ++i)
        if (td.bags[i].size() > td.bags[root].size())
            root = i;

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
    for (auto [a, b] : td.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());

    // Iterative DFS producing a post-order of the original tree.
    std::vector<int> parent(static_cast<std::size_t>(nodes), -1);
    std::vector<int> post;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    seen[root] = 1;
    while (!stack.empty()) {
        auto& [x, next] = stack.back();
        if (next < adj[x].size()) {
            int y = adj[x][next++];
            if (!seen[y]) {
                seen[y] = 1;
                parent[y] = x;
                stack.emplace_back(y, 0);
            }
        } else {
            post.push_back(x);
            stack.pop_back();
        }
    }

    std::vector<int> top(static_cast<std::size_t>(nodes), -1);
    for (int x : post) {
        const auto& bag = td.bags[x];
        int acc = -1;
        for (int c : adj[x]) {
            if (c == parent[x])
                continue;
            int chain = nb.transition(top[c], bag);
            acc = acc == -1 ? chain : nb.add(NiceKind::join, -1, bag, {acc, chain});
        }
        if (acc == -1)
            acc = nb.transition(nb.leaf(), bag);
        top[x] = acc;
    }
    nb.ntd.root = nb.transition(top[root], {});
    return nb.ntd;
}

std::optional<std::string> validate_nice(const Graph& g, const NiceTreeDecomposition& ntd)
{
    const int count = static_cast<int>(ntd.nodes.size());
    if (count == 0 || ntd.root != count - 1)
        return "root must be the last node";
    std::vector<int> parents(static_cast<std::size_t>(count), 0);
    for (int i = 0; i < count; ++i) {
        const NiceNode& nd = ntd.nodes[i];
        const std::string where = "node " + std::to_string(i + 1);
        for (int c : nd.children) {
            if (c < 0 || c >= i)
                return where + ": child index not in post-order";
            ++parents[c];
        }
        auto child_bag = [&](std::size_t which) -> const std::vector<Vertex>& {
            return ntd.nodes[nd.children[which]].bag;
        };
        switch (nd.kind) {
        case NiceKind::leaf:
            if (!nd.children.empty() || !nd.bag.empty())
                return where + ": leaf must be childless with an empty bag";
            break;
        case NiceKind::introduce: {
            if (nd.children.size() != 1)
                return where + ": introduce needs one child";
            auto expect = nd.bag;
            auto it = std::find(expect.begin(), expect.end(), nd.vertex);
            if (it == expect.end())
                return where + ": introduced vertex missing from bag";
            expect.erase(it);
            if (child_bag(0) != expect)
                return where + ": introduce child bag mismatch";
            break;
        }
        case NiceKind::forget: {
            if (nd.children.size() != 1)
                return where + ": forget needs one child";
            if (std::binary_search(nd.bag.begin(), nd.bag.end(), nd.vertex))
                return where + ": forgotten vertex still in bag";
            auto expect = nd.bag;
            expect.insert(std::upper_bound(expect.begin(), expect.end(), nd.vertex), nd.vertex);
            if (child_bag(0) != expect)
                return where + ": forget child bag mismatch";
            break;
        }
        case NiceKind::join:
            if (nd.children.size() != 2)
                return where + ": join needs two children";
            if (child_bag(0) != nd.bag || child_bag(1) != nd.bag)
                return where + ": join children bags differ from node bag";
            break;
        }
    }
    for (int i = 0; i < count; ++i)
        if (parents[i] != (i == ntd.root ? 0 : 1))
            return "node " + std::to_string(i + 1) + " has " + std::to_string(parents[i]) +
                   " parents";
    if (g.num_vertices() > 0) {
        const NiceNode& r = ntd.nodes[ntd.root];
        if (r.kind != NiceKind::forget || !r.bag.empty())
            return "root must be a forget node with an empty bag";
    }
    return validate_td(g, ntd.as_plain());
}

TreeDecomposition parse_td(std::string_view text)
{
    std::istringstream is{std::string(text)};
    std::string line;
    int ln = 0;
    bool have_header = false;
    long long nbags = 0, nverts = 0;
    TreeDecomposition td;
    std::vector<char> declared;
    auto to_int = [&](const std::string& tok) {
        long long value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError(ln, "expected integer, got '" + tok + "'");
        return value;
    };
    while (std::getline(is, line)) {
        ++ln;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;)
            toks.push_back(t);
        if (toks.empty() || toks[0] == "c")
            continue;
        if (!have_header) {
            if (toks.size() != 5 || toks[0] != "s" || toks[1] != "td")
                throw ParseError(ln, "malformed header, expected 's td <bags> <width+1> <n>'");
            nbags = to_int(toks[2]);
            nverts = to_int(toks[4]);
            if (nbags < 0 || nverts < 0)
                throw ParseError(ln, "negative count in header");
            td.bags.resize(static_cast<std::size_t>(nbags));
            declared.assign(static_cast<std::size_t>(nbags), 0);
            have_header = true;
            continue;
        }
        if (toks[0] == "b") {
            if (toks.size() < 2)
                throw ParseError(ln, "bag line needs an id");
            long long id = to_int(toks[1]);
            if (id < 1 || id > nbags)
                throw ParseError(ln, "bag id " + std::to_string(id) + " out of range");
            if (declared[id - 1])
                throw ParseError(ln, "bag " + std::to_string(id) + " declared twice");
            declared[id - 1] = 1;
            auto& bag = td.bags[id - 1];
            for (std::size_t i = 2; i < toks.size(); ++i) {
                long long v = to_int(toks[i]);
                if (v < 1 || v > nverts)
                    throw ParseError(ln, "vertex " + std::to_string(v) + " out of range");
                bag.push_back(static_cast<Vertex>(v - 1));
            }
            std::sort(bag.begin(), bag.end());
            if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
                throw ParseError(ln, "bag " + std::to_string(id) + " repeats a vertex");
        } else {
            if (toks.size() != 2)
                throw ParseError(ln, "tree edge line needs two bag ids");
            long long a = to_int(toks[0]), b = to_int(toks[1]);
            if (a < 1 || b < 1 || a > nbags || b > nbags)
                throw ParseError(ln, "tree edge references unknown bag");
            td.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
        }
    }
    if (!have_header)
        throw ParseError(0, "missing 's td' header");
    for (std::size_t i = 0; i < declared.size(); ++i)
        if (!declared[i])
            throw ParseError(0, "bag " + std::to_string(i + 1) + " not declared");
    return td;
}

std::string serialize_td(const TreeDecomposition& td, int n)
{
    std::ostringstream os;
    std::size_t max_bag = 0;
    for (const auto& b : td.bags)
        max_bag = std::max(max_bag, b.size());
    os << "s td " << td.bags.size() << ' ' << max_bag << ' ' << n << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        os << "b " << i + 1;
        for (Vertex v : td.bags[i])
            os << ' ' << v + 1;
        os << '\n';
    }
    auto edges = td.edges;
    for (auto& [a, b] : edges)
        if (a > b)
            std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    for (auto [a, b] : edges)
        os << a + 1 << ' ' << b + 1 << '\n';
    return os.str();
}

}  // namespace selcol
