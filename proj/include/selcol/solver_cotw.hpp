#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "selcol/instance.hpp"
#include "selcol/solver_tw.hpp"
#include "selcol/tree_decomposition.hpp"

namespace selcol {

/// True iff p > k * (width + 1): no selection can be covered by k cliques when every
/// clique fits in a bag of at most width + 1 vertices.
bool early_reject(int p, int k, int width);

/// 1-entries of a Selective Clique Partition table. Q (selected bag vertices already
/// covered) is a bitmask over bag positions, so bags are limited to 32 vertices.
class ScpTable {
public:
    struct Key {
        PartMask parts = 0;
        std::uint32_t covered = 0;
        int cliques = 0;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept
        {
            std::uint64_t h = (std::uint64_t{k.parts} << 32) ^ k.covered;
            return std::hash<std::uint64_t>{}(h * 0x9E3779B97F4A7C15ULL + static_cast<unsigned>(k.cliques));
        }
    };
    struct Back {
        int first = -1;
        int second = -1;
        std::uint32_t clique = 0;  // positions of the clique closed at an introduce node
    };

    explicit ScpTable(std::vector<Vertex> bag = {});

    const std::vector<Vertex>& bag() const { return bag_; }
    std::size_t size() const { return keys_.size(); }

    /// Throws std::invalid_argument when a vertex of Q is not in the bag.
    bool query(PartMask S, std::span<const Vertex> Q, int cliques) const;

    const Key& key(int i) const { return keys_[i]; }
    const Back& back(int i) const { return backs_[i]; }
    int find(const Key& k) const;
    bool insert(const Key& k, Back b);
    std::vector<Vertex> members(std::uint32_t mask) const;

private:
    std::vector<Vertex> bag_;
    std::vector<Key> keys_;
    std::vector<Back> backs_;
    std::unordered_map<Key, int, KeyHash> index_;
};

// The transitions operate on the complement instance: cliques there are color classes
// of the original graph.
ScpTable scp_leaf();
ScpTable scp_introduce(const Instance& complement_inst, const NiceNode& node, const ScpTable& child);
ScpTable scp_forget(const Instance& complement_inst, const NiceNode& node, const ScpTable& child);
ScpTable scp_join(const Instance& complement_inst, const NiceNode& node, const ScpTable& left,
                  const ScpTable& right);

std::vector<ScpTable> compute_scp_tables(const Instance& complement_inst,
                                         const NiceTreeDecomposition& ntd, int threads = 1);

struct CotwOptions {
    int max_parts = 24;
    int max_bag = 20;
    int threads = 1;
    std::optional<TreeDecomposition> complement_td;  // heuristic when absent
};

/// Selective Clique Partition on `complement_inst` over `ntd`. The witness carries the
/// cliques (valid for complement_inst) and the matching coloring (clique i -> color i).
Verdict solve_scp(const Instance& complement_inst, const NiceTreeDecomposition& ntd,
                  const CotwOptions& opts = {});

/// Complements the graph, decomposes it and runs the clique-partition program. The
/// witness is a coloring Solution of the original instance.
Verdict solve_cotw(const Instance& inst, const CotwOptions& opts = {});

}  // namespace selcol
