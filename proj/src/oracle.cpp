#include "selcol/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace selcol {

namespace {

class ColoringSearch {
public:
    ColoringSearch(const Graph& g, int k, std::vector<Color> colors)
        : g_(g), k_(k), colors_(std::move(colors)),
          nbr_count_(static_cast<std::size_t>(g.num_vertices()) * (k + 1), 0),
          used_(static_cast<std::size_t>(k + 1), 0)
    {
        for (Vertex v = 0; v < g_.num_vertices(); ++v)
            if (colors_[v] != 0)
                assign(v, colors_[v]);
    }

    // Optional shared work budget: every coloring step counts as one node.
    void limit(std::uint64_t* nodes, std::uint64_t max_nodes, std::chrono::steady_clock::time_point deadline)
    {
        nodes_ = nodes;
        max_nodes_ = max_nodes;
        deadline_ = deadline;
    }
    bool aborted() const { return aborted_; }

    bool run()
    {
        if (nodes_) {
            if (aborted_ || ++*nodes_ > max_nodes_ ||
                ((*nodes_ & 1023U) == 0 && std::chrono::steady_clock::now() > deadline_)) {
                aborted_ = true;
                return false;
            }
        }
        Vertex v = pick();
        if (v < 0)
            return true;
        bool tried_fresh = false;
        for (Color c = 1; c <= k_; ++c) {
            if (nbr(v, c) != 0)
                continue;
            if (used_[c] == 0) {
                if (tried_fresh)
                    continue;
                tried_fresh = true;
            }
            assign(v, c);
            if (run())
                return true;
            unassign(v, c);
            if (aborted_)
                return false;
        }
        return false;
    }

    std::vector<Color> colors() const { return colors_; }

private:
    int& nbr(Vertex v, Color c) { return nbr_count_[static_cast<std::size_t>(v) * (k_ + 1) + c]; }

    void assign(Vertex v, Color c)
    {
        colors_[v] = c;
        ++used_[c];
        for (Vertex w : g_.neighbors(v))
            ++nbr(w, c);
    }

    void unassign(Vertex v, Color c)
    {
        colors_[v] = 0;
        --used_[c];
        for (Vertex w : g_.neighbors(v))
            --nbr(w, c);
    }

    // Highest saturation first, then highest degree, then lowest id.
    Vertex pick()
    {
        Vertex best = -1;
        int best_sat = -1, best_deg = -1;
        for (Vertex v = 0; v < g_.num_vertices(); ++v) {
            if (colors_[v] != 0)
                continue;
            int sat = 0;
            for (Color c = 1; c <= k_; ++c)
                sat += nbr(v, c) != 0;
            int deg = g_.degree(v);
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        return best;
    }

    const Graph& g_;
    int k_;
    std::vector<Color> colors_;
    std::vector<int> nbr_count_;
    std::vector<int> used_;
    std::uint64_t* nodes_ = nullptr;
    std::uint64_t max_nodes_ = 0;
    std::chrono::steady_clock::time_point deadline_;
    bool aborted_ = false;
};

bool precoloring_proper(const Graph& g, int k, const std::vector<Color>& pre)
{
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (pre[v] < 0 || pre[v] > k)
            return false;
        if (pre[v] == 0)
            continue;
        for (Vertex w : g.neighbors(v))
            if (pre[w] == pre[v])
                return false;
    }
    return true;
}

class SelectionSearch {
public:
    SelectionSearch(const Instance& inst, const std::vector<ForcedVertex>& forced,
                    const BruteForceOptions& opts)
        : inst_(inst), opts_(opts), deadline_(std::chrono::steady_clock::now() + opts.limits.time_budget)
    {
        std::vector<char> forced_part(static_cast<std::size_t>(inst.num_parts()), 0);
        for (auto [v, c] : forced) {
            chosen_.push_back(v);
            fixed_.push_back(c);
            colors_.push_back(c);
            forced_part[inst.part_of(v)] = 1;
        }
        for (int j = 0; j < inst.num_parts(); ++j)
            if (!forced_part[j])
                order_.push_back(j);
        excluded_.assign(static_cast<std::size_t>(inst.num_vertices()), 0);
        for (Vertex v : opts.excluded)
            excluded_.at(static_cast<std::size_t>(v)) = 1;
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            return inst.part(a).size() < inst.part(b).size();
        });
    }

    Answer run()
    {
        if (!opts_.prune)
            return descend(0);
        Answer a = colorable_prefix();
        return a == Answer::yes ? descend(0) : a;
    }

    std::uint64_t nodes() const { return nodes_; }
    const std::vector<Vertex>& chosen() const { return chosen_; }
    const std::vector<Color>& colors() const { return colors_; }

private:
    Answer descend(std::size_t level)
    {
        if (level == order_.size())
            return opts_.prune ? Answer::yes : colorable_prefix();
        for (Vertex v : inst_.part(order_[level])) {
            if (excluded_[v])
                continue;
            if (++nodes_ > opts_.limits.max_nodes)
                return Answer::exhausted;
            if ((nodes_ & 1023U) == 0 && std::chrono::steady_clock::now() > deadline_)
                return Answer::exhausted;
            chosen_.push_back(v);
            fixed_.push_back(0);
            colors_.push_back(0);
            auto saved = colors_;
            Answer fits = opts_.prune ? extend_with_last() : Answer::yes;
            if (fits == Answer::exhausted)
                return fits;
            if (fits == Answer::yes) {
                Answer a = descend(level + 1);
                if (a != Answer::no)
                    return a;
            }
            colors_ = std::move(saved);
            chosen_.pop_back();
            fixed_.pop_back();
            colors_.pop_back();
        }
        return Answer::no;
    }

    // Cheap path: give the new vertex a color free among its chosen neighbors;
    // otherwise recolor the whole prefix exactly.
    Answer extend_with_last()
    {
        const Graph& g = inst_.graph();
        Vertex v = chosen_.back();
        std::vector<char> blocked(static_cast<std::size_t>(inst_.k() + 1), 0);
        for (std::size_t i = 0; i + 1 < chosen_.size(); ++i)
            if (g.adjacent(v, chosen_[i]))
                blocked[colors_[i]] = 1;
        for (Color c = 1; c <= inst_.k(); ++c)
            if (!blocked[c]) {
                colors_.back() = c;
                return Answer::yes;
            }
        return colorable_prefix();
    }

    Answer colorable_prefix()
    {
        auto sub = induced_subgraph(inst_.graph(), chosen_);
        if (!precoloring_proper(sub.graph, inst_.k(), fixed_))
            return Answer::no;
        ColoringSearch search(sub.graph, inst_.k(), fixed_);
        search.limit(&nodes_, opts_.limits.max_nodes, deadline_);
        if (search.run()) {
            colors_ = search.colors();
            return Answer::yes;
        }
        return search.aborted() ? Answer::exhausted : Answer::no;
    }

    const Instance& inst_;
    BruteForceOptions opts_;
    std::chrono::steady_clock::time_point deadline_;
    std::vector<int> order_;
    std::vector<Vertex> chosen_;
    std::vector<Color> fixed_;
    std::vector<char> excluded_;
    std::vector<Color> colors_;
    std::uint64_t nodes_ = 0;
};

Verdict run_search(const Instance& inst, const std::vector<ForcedVertex>& forced,
                   const BruteForceOptions& opts, const char* name)
{
    auto start = std::chrono::steady_clock::now();
    SelectionSearch search(inst, forced, opts);
    Verdict out;
    out.answer = search.run();
    out.stats.solver = name;
    out.stats.params["p"] = inst.num_parts();
    out.stats.params["k"] = inst.k();
    out.stats.params["forced"] = static_cast<std::int64_t>(forced.size());
    out.stats.params["search_nodes"] = static_cast<std::int64_t>(search.nodes());
    if (out.answer == Answer::yes)
        out.witness = make_colored_solution(search.chosen(), search.colors());
    if (out.answer == Answer::exhausted)
        out.stats.notes.push_back("budget exhausted");
    out.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace

std::optional<std::vector<Color>> extend_coloring(const Graph& g, int k,
                                                  const std::vector<Color>& precolor)
{
    if (k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (static_cast<int>(precolor.size()) != g.num_vertices())
        throw std::invalid_argument("precoloring size mismatch");
    if (!precoloring_proper(g, k, precolor))
        return std::nullopt;
    ColoringSearch search(g, k, precolor);
    if (!search.run())
        return std::nullopt;
    return search.colors();
}

std::optional<std::vector<Color>> is_k_colorable(const Graph& g, int k)
{
    return extend_coloring(g, k, std::vector<Color>(static_cast<std::size_t>(g.num_vertices()), 0));
}

Verdict brute_force(const Instance& inst, const BruteForceOptions& opts)
{
    return run_search(inst, {}, opts, "brute");
}

Verdict restricted_brute_force(const Instance& inst, const std::vector<ForcedVertex>& forced,
                               const BruteForceOptions& opts)
{
    std::vector<char> part_used(static_cast<std::size_t>(inst.num_parts()), 0);
    for (auto [v, c] : forced) {
        if (v < 0 || v >= inst.num_vertices())
            throw std::invalid_argument("forced vertex " + std::to_string(v + 1) + " out of range");
        if (c < 1 || c > inst.k())
            throw std::invalid_argument("forced color " + std::to_string(c) + " out of range");
        if (part_used[inst.part_of(v)]++)
            throw std::invalid_argument("forced vertices hit part " +
                                        std::to_string(inst.part_of(v) + 1) + " twice");
    }
    for (std::size_t a = 0; a < forced.size(); ++a)
        for (std::size_t b = a + 1; b < forced.size(); ++b)
            if (forced[a].second == forced[b].second &&
                inst.graph().adjacent(forced[a].first, forced[b].first))
                throw std::invalid_argument("forced coloring is improper on edge v" +
                                            std::to_string(forced[a].first + 1) + "v" +
                                            std::to_string(forced[b].first + 1));
    return run_search(inst, forced, opts, "brute-restricted");
}

}  // namespace selcol
