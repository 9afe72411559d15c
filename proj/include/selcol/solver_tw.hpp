#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selcol/instance.hpp"
#include "selcol/tree_decomposition.hpp"

namespace selcol {

/// Bit j set = part j (0-based) is hit.
using PartMask = std::uint32_t;

/// Partial partition of a bag into color classes plus the unselected rest.
/// Canonical form orders blocks by their smallest vertex.
struct BagColoring {
    std::vector<std::vector<Vertex>> blocks;
    std::vector<Vertex> unselected;

    friend bool operator==(const BagColoring&, const BagColoring&) = default;
};

/// True when the table entry (S, phi) is forced to 0: a colored vertex lies in a
/// part of S, two colored vertices share a part, or a block holds an edge.
bool zero_check(const Instance& inst, std::span<const Vertex> bag, PartMask S,
                const BagColoring& phi);

/// The 1-entries of one node's table, with one back-pointer each for witness
/// reconstruction. Colorings are packed 4 bits per bag position (0 = unselected,
/// otherwise the canonical block number), so bags are limited to 15 vertices.
class TwTable {
public:
    struct Key {
        PartMask parts = 0;
        std::uint64_t coloring = 0;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept
        {
            return std::hash<std::uint64_t>{}(k.coloring * 0x9E3779B97F4A7C15ULL ^ k.parts);
        }
    };
    struct Back {
        int first = -1;
        int second = -1;
    };

    static constexpr int max_bag = 15;

    explicit TwTable(std::vector<Vertex> bag = {});

    const std::vector<Vertex>& bag() const { return bag_; }
    std::size_t size() const { return keys_.size(); }

    /// Throws std::invalid_argument when phi does not partition the bag.
    bool query(PartMask S, const BagColoring& phi) const;

    std::vector<std::pair<PartMask, BagColoring>> entries() const;

    // Low-level access used by the transitions and the reconstruction.
    const Key& key(int i) const { return keys_[i]; }
    const Back& back(int i) const { return backs_[i]; }
    int find(const Key& k) const;
    bool insert(const Key& k, Back b);

    std::uint64_t encode(const BagColoring& phi) const;
    BagColoring decode(std::uint64_t code) const;

private:
    std::vector<Vertex> bag_;
    std::vector<Key> keys_;
    std::vector<Back> backs_;
    std::unordered_map<Key, int, KeyHash> index_;
};

TwTable table_leaf();
TwTable table_introduce(const Instance& inst, const NiceNode& node, const TwTable& child);
TwTable table_forget(const Instance& inst, const NiceNode& node, const TwTable& child);
TwTable table_join(const Instance& inst, const NiceNode& node, const TwTable& left,
                   const TwTable& right);

/// All node tables, indexed like `ntd.nodes`.
std::vector<TwTable> compute_tw_tables(const Instance& inst, const NiceTreeDecomposition& ntd,
                                       int threads = 1);

struct TwOptions {
    int max_parts = 24;
    int threads = 1;
    bool trivial_shortcut = true;  // answer YES outright when k >= width + 2
};

/// Throws CapacityError when p exceeds max_parts or a bag exceeds 15 vertices, and
/// std::invalid_argument when `ntd` is not a valid nice decomposition of the graph.
Verdict solve_tw(const Instance& inst, const NiceTreeDecomposition& ntd,
                 const TwOptions& opts = {});

/// Greedy coloring of one-vertex-per-part (smallest ids) along the top-down forget
/// order of `ntd`; uses at most width + 1 colors.
Solution greedy_selection(const Instance& inst, const NiceTreeDecomposition& ntd);

}  // namespace selcol
