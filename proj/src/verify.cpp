#include "selcol/verify.hpp"

#include <string>

namespace selcol {

namespace {

std::string vname(Vertex v) { return "v" + std::to_string(v + 1); }

}  // namespace

std::vector<std::string> verify_solution(const Instance& inst, const Solution& sol)
{
    std::vector<std::string> out;
    const int n = inst.num_vertices();
    const Graph& g = inst.graph();

    std::vector<char> in_sel(static_cast<std::size_t>(n), 0);
    std::vector<int> hits(static_cast<std::size_t>(inst.num_parts()), 0);
    for (Vertex v : sol.selected) {
        if (v < 0 || v >= n) {
            out.push_back("vertex " + std::to_string(v + 1) + " out of range");
            continue;
        }
        if (in_sel[v]) {
            out.push_back("vertex " + vname(v) + " selected twice");
            continue;
        }
        in_sel[v] = 1;
        ++hits[inst.part_of(v)];
    }
    for (int j = 0; j < inst.num_parts(); ++j) {
        if (hits[j] == 0)
            out.push_back("part " + std::to_string(j + 1) + " not hit");
        else if (hits[j] > 1)
            out.push_back("part " + std::to_string(j + 1) + " hit " + std::to_string(hits[j]) +
                          " times");
    }

    if (!sol.coloring && !sol.cliques)
        out.push_back("solution carries neither a coloring nor a clique partition");

    if (sol.coloring) {
        const auto& col = *sol.coloring;
        for (auto [v, c] : col) {
            if (v < 0 || v >= n || !in_sel[v])
                out.push_back("coloring assigns unselected vertex " + std::to_string(v + 1));
            if (c < 1 || c > inst.k())
                out.push_back("vertex " + vname(v) + " has color " + std::to_string(c) +
                              " outside 1.." + std::to_string(inst.k()));
        }
        for (Vertex v : sol.selected) {
            if (v < 0 || v >= n)
                continue;
            auto it = col.find(v);
            if (it == col.end()) {
                out.push_back("vertex " + vname(v) + " selected but not colored");
                continue;
            }
            for (Vertex w : g.neighbors(v)) {
                if (w <= v || !in_sel[w])
                    continue;
                auto jt = col.find(w);
                if (jt != col.end() && jt->second == it->second)
                    out.push_back("edge " + vname(v) + vname(w) + " monochromatic");
            }
        }
    }

    if (sol.cliques) {
        const auto& cliques = *sol.cliques;
        if (static_cast<int>(cliques.size()) > inst.k())
            out.push_back(std::to_string(cliques.size()) + " cliques exceed k = " +
                          std::to_string(inst.k()));
        std::vector<int> cover(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < cliques.size(); ++i) {
            const auto& c = cliques[i];
            if (c.empty())
                out.push_back("clique " + std::to_string(i + 1) + " is empty");
            bool in_range = true;
            for (Vertex v : c) {
                if (v < 0 || v >= n) {
                    out.push_back("clique vertex " + std::to_string(v + 1) + " out of range");
                    in_range = false;
                    continue;
                }
                ++cover[v];
            }
            if (!in_range)
                continue;
            for (std::size_t a = 0; a < c.size(); ++a)
                for (std::size_t b = a + 1; b < c.size(); ++b)
                    if (!g.adjacent(c[a], c[b]))
                        out.push_back("clique " + std::to_string(i + 1) + " misses edge " +
                                      vname(c[a]) + vname(c[b]));
        }
        for (Vertex v = 0; v < n; ++v) {
            if (in_sel[v] && cover[v] != 1)
                out.push_back("vertex " + vname(v) + " covered " + std::to_string(cover[v]) +
                              " times by cliques");
            if (!in_sel[v] && cover[v] > 0)
                out.push_back("clique covers unselected vertex " + vname(v));
        }
    }
    return out;
}

}  // namespace selcol
