#include "selcol/solver_cotw.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <string>

#include "tree_dp.hpp"

namespace selcol {

namespace {

std::uint32_t insert_bit(std::uint32_t mask, int pos, bool bit)
{
    std::uint32_t low = mask & ((std::uint32_t{1} << pos) - 1);
    std::uint64_t high = std::uint64_t{mask} >> pos;
    return static_cast<std::uint32_t>(low | (std::uint32_t{bit} << pos) | (high << (pos + 1)));
}

std::uint32_t remove_bit(std::uint32_t mask, int pos)
{
    std::uint32_t low = mask & ((std::uint32_t{1} << pos) - 1);
    std::uint32_t high = static_cast<std::uint32_t>(std::uint64_t{mask} >> (pos + 1));
    return low | (high << pos);
}

int position_of(const std::vector<Vertex>& bag, Vertex v)
{
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v)
        throw std::logic_error("vertex not in bag");
    return static_cast<int>(it - bag.begin());
}

PartMask part_bit(int part) { return PartMask{1} << part; }

// Part mask of the covered positions, or nullopt when two of them share a part.
std::optional<PartMask> covered_parts(const Instance& inst, const std::vector<Vertex>& bag,
                                      std::uint32_t covered)
{
    PartMask parts = 0;
    for (std::uint32_t b = covered; b != 0; b &= b - 1) {
        PartMask bit = part_bit(inst.part_of(bag[std::countr_zero(b)]));
        if (parts & bit)
            return std::nullopt;
        parts |= bit;
    }
    return parts;
}

}  // namespace

bool early_reject(int p, int k, int width)
{
    return static_cast<long long>(p) > static_cast<long long>(k) * (width + 1);
}

ScpTable::ScpTable(std::vector<Vertex> bag) : bag_(std::move(bag))
{
    if (bag_.size() > 32)
        throw CapacityError("bag of " + std::to_string(bag_.size()) +
                            " vertices exceeds the 32-vertex limit of the clique-partition tables");
}

int ScpTable::find(const Key& k) const
{
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
}

bool ScpTable::insert(const Key& k, Back b)
{
    auto [it, fresh] = index_.try_emplace(k, static_cast<int>(keys_.size()));
    if (fresh) {
        keys_.push_back(k);
        backs_.push_back(b);
    }
    return fresh;
}

std::vector<Vertex> ScpTable::members(std::uint32_t mask) const
{
    std::vector<Vertex> out;
    for (std::uint32_t b = mask; b != 0; b &= b - 1)
        out.push_back(bag_[std::countr_zero(b)]);
    return out;
}

bool ScpTable::query(PartMask S, std::span<const Vertex> Q, int cliques) const
{
    std::uint32_t mask = 0;
    for (Vertex v : Q) {
        auto it = std::lower_bound(bag_.begin(), bag_.end(), v);
        if (it == bag_.end() || *it != v)
            throw std::invalid_argument("malformed key: vertex " + std::to_string(v + 1) +
                                        " not in bag");
        mask |= std::uint32_t{1} << (it - bag_.begin());
    }
    return find({S, mask, cliques}) >= 0;
}

ScpTable scp_leaf()
{
    ScpTable t;
    t.insert({0, 0, 0}, {});
    return t;
}

ScpTable scp_introduce(const Instance& inst, const NiceNode& node, const ScpTable& child)
{
    ScpTable t(node.bag);
    const auto& bag = node.bag;
    const int m = static_cast<int>(bag.size());
    const Vertex v = node.vertex;
    const int pos = position_of(bag, v);
    const PartMask vbit = part_bit(inst.part_of(v));
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && inst.graph().adjacent(bag[i], bag[j]))
                adj[i] |= std::uint32_t{1} << j;

    for (std::size_t e = 0; e < child.size(); ++e) {
        const auto& key = child.key(static_cast<int>(e));
        const std::uint32_t covered = insert_bit(key.covered, pos, false);
        t.insert({key.parts, covered, key.cliques}, {static_cast<int>(e), -1, 0});

        if (key.cliques >= inst.k() || (key.parts & vbit))
            continue;
        auto qparts = covered_parts(inst, bag, covered);
        if (!qparts || (*qparts & vbit))
            continue;

        // Grow cliques R with v in R, drawn from uncovered positions adjacent to v,
        // keeping parts pairwise distinct and away from S and from Q.
        std::vector<int> cand;
        for (int i = 0; i < m; ++i) {
            if (i == pos || (covered >> i & 1U) || !(adj[pos] >> i & 1U))
                continue;
            PartMask b = part_bit(inst.part_of(bag[i]));
            if ((b & key.parts) || (b & *qparts) || b == vbit)
                continue;
            cand.push_back(i);
        }
        const std::uint32_t start = std::uint32_t{1} << pos;
        std::function<void(std::size_t, std::uint32_t, PartMask)> grow =
            [&](std::size_t from, std::uint32_t clique, PartMask used) {
                t.insert({key.parts, covered | clique, key.cliques + 1},
                         {static_cast<int>(e), -1, clique});
                for (std::size_t c = from; c < cand.size(); ++c) {
                    int i = cand[c];
                    PartMask b = part_bit(inst.part_of(bag[i]));
                    if ((used & b) || (adj[i] & clique) != clique)
                        continue;
                    grow(c + 1, clique | (std::uint32_t{1} << i), used | b);
                }
            };
        grow(0, start, vbit);
    }
    return t;
}

ScpTable scp_forget(const Instance& inst, const NiceNode& node, const ScpTable& child)
{
    ScpTable t(node.bag);
    const int pos = position_of(child.bag(), node.vertex);
    const PartMask vbit = part_bit(inst.part_of(node.vertex));
    for (std::size_t e = 0; e < child.size(); ++e) {
        const auto& key = child.key(static_cast<int>(e));
        PartMask parts = key.parts;
        if (key.covered >> pos & 1U)
            parts |= vbit;
        t.insert({parts, remove_bit(key.covered, pos), key.cliques}, {static_cast<int>(e), -1, 0});
    }
    return t;
}

ScpTable scp_join(const Instance& inst, const NiceNode& node, const ScpTable& left,
                  const ScpTable& right)
{
    ScpTable t(node.bag);
    for (std::size_t a = 0; a < left.size(); ++a) {
        const auto& lk = left.key(static_cast<int>(a));
        for (std::size_t b = 0; b < right.size(); ++b) {
            const auto& rk = right.key(static_cast<int>(b));
            if ((lk.parts & rk.parts) || (lk.covered & rk.covered) || lk.cliques + rk.cliques > inst.k())
                continue;
            const std::uint32_t covered = lk.covered | rk.covered;
            const PartMask parts = lk.parts | rk.parts;
            auto qparts = covered_parts(inst, node.bag, covered);
            if (!qparts || (*qparts & parts))
                continue;
            t.insert({parts, covered, lk.cliques + rk.cliques}, {static_cast<int>(a), static_cast<int>(b), 0});
        }
    }
    return t;
}

std::vector<ScpTable> compute_scp_tables(const Instance& inst, const NiceTreeDecomposition& ntd,
                                         int threads)
{
    std::vector<ScpTable> tables(ntd.nodes.size());
    detail::run_tree_dp(ntd, threads, [&](int i) {
        const NiceNode& nd = ntd.nodes[i];
        switch (nd.kind) {
        case NiceKind::leaf: tables[i] = scp_leaf(); break;
        case NiceKind::introduce: tables[i] = scp_introduce(inst, nd, tables[nd.children[0]]); break;
        case NiceKind::forget: tables[i] = scp_forget(inst, nd, tables[nd.children[0]]); break;
        case NiceKind::join:
            tables[i] = scp_join(inst, nd, tables[nd.children[0]], tables[nd.children[1]]);
            break;
        }
    });
    return tables;
}

Verdict solve_scp(const Instance& inst, const NiceTreeDecomposition& ntd, const CotwOptions& opts)
{
    auto start = std::chrono::steady_clock::now();
    const int p = inst.num_parts();
    const int w = ntd.width();
    Verdict out;
    out.stats.solver = "cotw";
    out.stats.params["cowidth"] = w;
    out.stats.params["p"] = p;
    out.stats.params["k"] = inst.k();
    out.stats.params["n"] = inst.num_vertices();
    auto finish = [&]() {
        out.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out;
    };

    if (early_reject(p, inst.k(), w)) {
        out.answer = Answer::no;
        out.stats.notes.push_back("early reject: p > k * (cowidth + 1)");
        return finish();
    }
    const int part_limit = std::min(opts.max_parts, 32);
    if (p > part_limit)
        throw CapacityError("cotreewidth solver limited to " + std::to_string(part_limit) +
                            " parts, instance has " + std::to_string(p));
    if (w + 1 > std::min(opts.max_bag, 32))
        throw CapacityError("complement bag size " + std::to_string(w + 1) + " exceeds limit " +
                            std::to_string(std::min(opts.max_bag, 32)));
    if (auto err = validate_nice(inst.graph(), ntd))
        throw std::invalid_argument("decomposition invalid for the complement graph: " + *err);

    auto tables = compute_scp_tables(inst, ntd, opts.threads);
    std::int64_t total = 0, largest = 0;
    for (const auto& t : tables) {
        total += static_cast<std::int64_t>(t.size());
        largest = std::max<std::int64_t>(largest, static_cast<std::int64_t>(t.size()));
    }
    out.stats.params["table_entries"] = total;
    out.stats.params["max_table"] = largest;

    const PartMask full = p == 32 ? ~PartMask{0} : (PartMask{1} << p) - 1;
    int root_entry = -1;
    for (int l = 0; l <= inst.k() && root_entry < 0; ++l)
        root_entry = tables[ntd.root].find({full, 0, l});
    if (root_entry < 0) {
        out.answer = Answer::no;
        return finish();
    }

    std::vector<std::vector<Vertex>> cliques;
    std::vector<std::pair<int, int>> stack{{ntd.root, root_entry}};
    while (!stack.empty()) {
        auto [node, entry] = stack.back();
        stack.pop_back();
        const NiceNode& nd = ntd.nodes[node];
        const auto& back = tables[node].back(entry);
        if (back.clique != 0)
            cliques.push_back(tables[node].members(back.clique));
        if (back.second >= 0)
            stack.emplace_back(nd.children[1], back.second);
        if (back.first >= 0)
            stack.emplace_back(nd.children[0], back.first);
    }

    std::vector<Vertex> selected;
    std::vector<Color> colors;
    for (std::size_t i = 0; i < cliques.size(); ++i)
        for (Vertex v : cliques[i]) {
            selected.push_back(v);
            colors.push_back(static_cast<Color>(i) + 1);
        }
    Solution sol = make_colored_solution(selected, colors);
    sol.cliques = cliques;
    out.answer = Answer::yes;
    out.witness = std::move(sol);
    out.stats.params["cliques"] = static_cast<std::int64_t>(cliques.size());
    return finish();
}

Verdict solve_cotw(const Instance& inst, const CotwOptions& opts)
{
    auto start = std::chrono::steady_clock::now();
    Instance comp = inst.with_graph(complement(inst.graph()));
    TreeDecomposition td = opts.complement_td ? *opts.complement_td : heuristic_decompose(comp.graph());
    if (auto err = validate_td(comp.graph(), td))
        throw std::invalid_argument("decomposition invalid for the complement graph: " + *err);
    NiceTreeDecomposition ntd = make_nice(td);
    Verdict v = solve_scp(comp, ntd, opts);
    // Cliques of the complement are independent sets of the original graph; only the
    // coloring is meaningful against the original instance.
    if (v.witness)
        v.witness->cliques.reset();
    v.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return v;
}

}  // namespace selcol
