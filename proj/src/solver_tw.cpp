#include "selcol/solver_tw.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "tree_dp.hpp"

namespace selcol {

namespace {

constexpr int kLabelBits = 4;

int label_at(std::uint64_t code, int pos) { return static_cast<int>((code >> (kLabelBits * pos)) & 0xF); }

std::uint64_t low_mask(int pos)
{
    return pos == 0 ? 0 : ((std::uint64_t{1} << (kLabelBits * pos)) - 1);
}

std::uint64_t insert_label(std::uint64_t code, int pos, int label)
{
    std::uint64_t low = code & low_mask(pos);
    std::uint64_t high = code >> (kLabelBits * pos);
    return low | (static_cast<std::uint64_t>(label) << (kLabelBits * pos)) |
           (high << (kLabelBits * (pos + 1)));
}

std::uint64_t remove_label(std::uint64_t code, int pos)
{
    std::uint64_t low = code & low_mask(pos);
    std::uint64_t high = code >> (kLabelBits * (pos + 1));
    return low | (high << (kLabelBits * pos));
}

// Renumbers blocks by first occurrence, i.e. by smallest vertex.
std::uint64_t canonicalize(std::uint64_t code, int size)
{
    int remap[16] = {};
    int next = 1;
    std::uint64_t out = 0;
    for (int i = 0; i < size; ++i) {
        int l = label_at(code, i);
        if (l == 0)
            continue;
        if (remap[l] == 0)
            remap[l] = next++;
        out |= static_cast<std::uint64_t>(remap[l]) << (kLabelBits * i);
    }
    return out;
}

int block_count(std::uint64_t code, int size)
{
    int best = 0;
    for (int i = 0; i < size; ++i)
        best = std::max(best, label_at(code, i));
    return best;
}

int position_of(const std::vector<Vertex>& bag, Vertex v)
{
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v)
        throw std::logic_error("vertex not in bag");
    return static_cast<int>(it - bag.begin());
}

PartMask part_bit(int part) { return PartMask{1} << part; }

}  // namespace

bool zero_check(const Instance& inst, std::span<const Vertex> bag, PartMask S,
                const BagColoring& phi)
{
    (void)bag;
    std::vector<Vertex> colored;
    for (const auto& block : phi.blocks) {
        for (std::size_t a = 0; a < block.size(); ++a) {
            if (S & part_bit(inst.part_of(block[a])))
                return true;
            for (std::size_t b = a + 1; b < block.size(); ++b)
                if (inst.graph().adjacent(block[a], block[b]))
                    return true;
            colored.push_back(block[a]);
        }
    }
    for (std::size_t a = 0; a < colored.size(); ++a)
        for (std::size_t b = a + 1; b < colored.size(); ++b)
            if (inst.part_of(colored[a]) == inst.part_of(colored[b]))
                return true;
    return false;
}

TwTable::TwTable(std::vector<Vertex> bag) : bag_(std::move(bag))
{
    if (static_cast<int>(bag_.size()) > max_bag)
        throw CapacityError("bag of " + std::to_string(bag_.size()) +
                            " vertices exceeds the treewidth solver limit of " +
                            std::to_string(max_bag));
}

int TwTable::find(const Key& k) const
{
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
}

bool TwTable::insert(const Key& k, Back b)
{
    auto [it, fresh] = index_.try_emplace(k, static_cast<int>(keys_.size()));
    if (fresh) {
        keys_.push_back(k);
        backs_.push_back(b);
    }
    return fresh;
}

std::uint64_t TwTable::encode(const BagColoring& phi) const
{
    const int m = static_cast<int>(bag_.size());
    std::vector<int> labels(static_cast<std::size_t>(m), -1);
    auto place = [&](Vertex v, int label) {
        auto it = std::lower_bound(bag_.begin(), bag_.end(), v);
        if (it == bag_.end() || *it != v)
            throw std::invalid_argument("malformed key: vertex " + std::to_string(v + 1) +
                                        " not in bag");
        auto& slot = labels[it - bag_.begin()];
        if (slot != -1)
            throw std::invalid_argument("malformed key: vertex " + std::to_string(v + 1) +
                                        " listed twice");
        slot = label;
    };
    if (phi.blocks.size() > 15)
        throw std::invalid_argument("malformed key: too many blocks");
    for (std::size_t b = 0; b < phi.blocks.size(); ++b) {
        if (phi.blocks[b].empty())
            throw std::invalid_argument("malformed key: empty block");
        for (Vertex v : phi.blocks[b])
            place(v, static_cast<int>(b) + 1);
    }
    for (Vertex v : phi.unselected)
        place(v, 0);
    std::uint64_t code = 0;
    for (int i = 0; i < m; ++i) {
        if (labels[i] == -1)
            throw std::invalid_argument("malformed key: bag vertex " + std::to_string(bag_[i] + 1) +
                                        " missing");
        code |= static_cast<std::uint64_t>(labels[i]) << (kLabelBits * i);
    }
    return canonicalize(code, m);
}

BagColoring TwTable::decode(std::uint64_t code) const
{
    BagColoring phi;
    for (std::size_t i = 0; i < bag_.size(); ++i) {
        int l = label_at(code, static_cast<int>(i));
        if (l == 0) {
            phi.unselected.push_back(bag_[i]);
            continue;
        }
        if (static_cast<int>(phi.blocks.size()) < l)
            phi.blocks.resize(static_cast<std::size_t>(l));
        phi.blocks[l - 1].push_back(bag_[i]);
    }
    return phi;
}

bool TwTable::query(PartMask S, const BagColoring& phi) const
{
    return find(Key{S, encode(phi)}) >= 0;
}

std::vector<std::pair<PartMask, BagColoring>> TwTable::entries() const
{
    std::vector<std::pair<PartMask, BagColoring>> out;
    out.reserve(keys_.size());
    for (const Key& k : keys_)
        out.emplace_back(k.parts, decode(k.coloring));
    return out;
}

TwTable table_leaf()
{
    TwTable t;
    t.insert({0, 0}, {});
    return t;
}

TwTable table_introduce(const Instance& inst, const NiceNode& node, const TwTable& child)
{
    TwTable t(node.bag);
    const auto& bag = node.bag;
    const int m = static_cast<int>(bag.size());
    const Vertex v = node.vertex;
    const int pos = position_of(bag, v);
    const int pv = inst.part_of(v);
    std::vector<char> adjacent(static_cast<std::size_t>(m), 0), same_part(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        if (i == pos)
            continue;
        adjacent[i] = inst.graph().adjacent(v, bag[i]);
        same_part[i] = inst.part_of(bag[i]) == pv;
    }

    for (std::size_t e = 0; e < child.size(); ++e) {
        const auto& key = child.key(static_cast<int>(e));
        const TwTable::Back back{static_cast<int>(e), -1};
        const std::uint64_t base = insert_label(key.coloring, pos, 0);
        t.insert({key.parts, base}, back);

        if (key.parts & part_bit(pv))
            continue;
        bool part_clash = false;
        std::vector<char> blocked(17, 0);
        for (int i = 0; i < m; ++i) {
            int l = label_at(base, i);
            if (l == 0)
                continue;
            part_clash |= same_part[i] != 0;
            if (adjacent[i])
                blocked[l] = 1;
        }
        if (part_clash)
            continue;
        const int blocks = block_count(base, m);
        for (int b = 1; b <= blocks; ++b)
            if (!blocked[b])
                t.insert({key.parts, canonicalize(base | (std::uint64_t(b) << (kLabelBits * pos)), m)},
                         back);
        if (blocks < inst.k() && blocks < TwTable::max_bag)
            t.insert({key.parts,
                      canonicalize(base | (std::uint64_t(blocks + 1) << (kLabelBits * pos)), m)},
                     back);
    }
    return t;
}

TwTable table_forget(const Instance& inst, const NiceNode& node, const TwTable& child)
{
    TwTable t(node.bag);
    const Vertex v = node.vertex;
    const int pos = position_of(child.bag(), v);
    const int m = static_cast<int>(node.bag.size());
    const PartMask bit = part_bit(inst.part_of(v));
    for (std::size_t e = 0; e < child.size(); ++e) {
        const auto& key = child.key(static_cast<int>(e));
        const int label = label_at(key.coloring, pos);
        std::uint64_t code = remove_label(key.coloring, pos);
        PartMask parts = key.parts;
        if (label != 0) {
            code = canonicalize(code, m);
            parts |= bit;
        }
        t.insert({parts, code}, {static_cast<int>(e), -1});
    }
    return t;
}

TwTable table_join(const Instance& inst, const NiceNode& node, const TwTable& left,
                   const TwTable& right)
{
    (void)inst;
    TwTable t(node.bag);
    std::unordered_map<std::uint64_t, std::vector<int>> by_coloring;
    for (std::size_t e = 0; e < right.size(); ++e)
        by_coloring[right.key(static_cast<int>(e)).coloring].push_back(static_cast<int>(e));
    for (std::size_t e = 0; e < left.size(); ++e) {
        const auto& lk = left.key(static_cast<int>(e));
        auto it = by_coloring.find(lk.coloring);
        if (it == by_coloring.end())
            continue;
        for (int r : it->second) {
            const auto& rk = right.key(r);
            if (lk.parts & rk.parts)
                continue;
            t.insert({lk.parts | rk.parts, lk.coloring}, {static_cast<int>(e), r});
        }
    }
    return t;
}

std::vector<TwTable> compute_tw_tables(const Instance& inst, const NiceTreeDecomposition& ntd,
                                       int threads)
{
    std::vector<TwTable> tables(ntd.nodes.size());
    detail::run_tree_dp(ntd, threads, [&](int i) {
        const NiceNode& nd = ntd.nodes[i];
        switch (nd.kind) {
        case NiceKind::leaf: tables[i] = table_leaf(); break;
        case NiceKind::introduce: tables[i] = table_introduce(inst, nd, tables[nd.children[0]]); break;
        case NiceKind::forget: tables[i] = table_forget(inst, nd, tables[nd.children[0]]); break;
        case NiceKind::join:
            tables[i] = table_join(inst, nd, tables[nd.children[0]], tables[nd.children[1]]);
            break;
        }
    });
    return tables;
}

Solution greedy_selection(const Instance& inst, const NiceTreeDecomposition& ntd)
{
    std::vector<int> forget_at(static_cast<std::size_t>(inst.num_vertices()), -1);
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i)
        if (ntd.nodes[i].kind == NiceKind::forget)
            forget_at[ntd.nodes[i].vertex] = static_cast<int>(i);
    std::vector<Vertex> order;
    for (int j = 0; j < inst.num_parts(); ++j)
        order.push_back(inst.part(j).front());
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return forget_at[a] > forget_at[b]; });

    std::vector<Color> color(static_cast<std::size_t>(inst.num_vertices()), 0);
    std::vector<Color> assigned;
    for (Vertex v : order) {
        std::vector<char> used;
        for (Vertex w : inst.graph().neighbors(v))
            if (color[w] != 0) {
                if (static_cast<int>(used.size()) <= color[w])
                    used.resize(static_cast<std::size_t>(color[w]) + 1, 0);
                used[color[w]] = 1;
            }
        Color c = 1;
        while (c < static_cast<int>(used.size()) && used[c])
            ++c;
        color[v] = c;
        assigned.push_back(c);
    }
    return make_colored_solution(order, assigned);
}

namespace {

Solution reconstruct(const Instance& inst, const NiceTreeDecomposition& ntd,
                     const std::vector<TwTable>& tables, int root_entry)
{
    std::vector<Color> color(static_cast<std::size_t>(inst.num_vertices()), 0);
    std::vector<Vertex> selected;
    std::vector<std::pair<int, int>> stack{{ntd.root, root_entry}};
    while (!stack.empty()) {
        auto [node, entry] = stack.back();
        stack.pop_back();
        const NiceNode& nd = ntd.nodes[node];
        const auto back = tables[node].back(entry);
        switch (nd.kind) {
        case NiceKind::leaf: break;
        case NiceKind::introduce: stack.emplace_back(nd.children[0], back.first); break;
        case NiceKind::join:
            stack.emplace_back(nd.children[1], back.second);
            stack.emplace_back(nd.children[0], back.first);
            break;
        case NiceKind::forget: {
            const TwTable& child = tables[nd.children[0]];
            const auto& cbag = child.bag();
            const auto code = child.key(back.first).coloring;
            const int pos = position_of(cbag, nd.vertex);
            const int label = label_at(code, pos);
            if (label != 0) {
                Color mate = 0;
                std::vector<char> taken(static_cast<std::size_t>(inst.k()) + 2, 0);
                for (std::size_t i = 0; i < cbag.size(); ++i) {
                    if (static_cast<int>(i) == pos)
                        continue;
                    int l = label_at(code, static_cast<int>(i));
                    Color c = color[cbag[i]];
                    if (l == 0 || c == 0)
                        continue;
                    if (l == label)
                        mate = c;
                    else
                        taken[c] = 1;
                }
                Color c = mate;
                if (c == 0) {
                    c = 1;
                    while (taken[c])
                        ++c;
                }
                color[nd.vertex] = c;
                selected.push_back(nd.vertex);
            }
            stack.emplace_back(nd.children[0], back.first);
            break;
        }
        }
    }
    std::vector<Color> colors;
    for (Vertex v : selected)
        colors.push_back(color[v]);
    return make_colored_solution(selected, colors);
}

}  // namespace

Verdict solve_tw(const Instance& inst, const NiceTreeDecomposition& ntd, const TwOptions& opts)
{
    auto start = std::chrono::steady_clock::now();
    const int p = inst.num_parts();
    if (auto err = validate_nice(inst.graph(), ntd))
        throw std::invalid_argument("decomposition invalid for the graph: " + *err);

    Verdict out;
    out.stats.solver = "tw";
    const int w = ntd.width();
    out.stats.params["width"] = w;
    out.stats.params["p"] = p;
    out.stats.params["k"] = inst.k();
    out.stats.params["n"] = inst.num_vertices();
    out.stats.params["td_nodes"] = static_cast<std::int64_t>(ntd.nodes.size());

    auto finish = [&]() {
        out.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out;
    };

    if (opts.trivial_shortcut && inst.k() >= w + 2) {
        out.answer = Answer::yes;
        out.witness = greedy_selection(inst, ntd);
        out.stats.notes.push_back("trivial positive: k >= width + 2");
        return finish();
    }

    if (p > std::min(opts.max_parts, 32))
        throw CapacityError("treewidth solver limited to " + std::to_string(std::min(opts.max_parts, 32)) +
                            " parts, instance has " + std::to_string(p) +
                            "; try --algo cluster or --algo brute");
    auto tables = compute_tw_tables(inst, ntd, opts.threads);
    std::int64_t total = 0, largest = 0;
    for (const auto& t : tables) {
        total += static_cast<std::int64_t>(t.size());
        largest = std::max<std::int64_t>(largest, static_cast<std::int64_t>(t.size()));
    }
    out.stats.params["table_entries"] = total;
    out.stats.params["max_table"] = largest;

    const PartMask full = p == 32 ? ~PartMask{0} : (PartMask{1} << p) - 1;
    int root_entry = tables[ntd.root].find({full, 0});
    if (root_entry < 0) {
        out.answer = Answer::no;
        return finish();
    }
    out.answer = Answer::yes;
    out.witness = reconstruct(inst, ntd, tables, root_entry);
    return finish();
}

}  // namespace selcol
