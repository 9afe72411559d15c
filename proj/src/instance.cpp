#include "selcol/instance.hpp"

#include <algorithm>
#include <string>

namespace selcol {

Instance::Instance(Graph graph, std::vector<std::vector<Vertex>> parts, int k)
    : graph_(std::move(graph)), parts_(std::move(parts)), k_(k)
{
    if (k_ < 1)
        throw std::invalid_argument("color budget k must be at least 1");
    if (parts_.empty())
        throw std::invalid_argument("instance needs at least one part");
    const int n = graph_.num_vertices();
    part_of_.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t j = 0; j < parts_.size(); ++j) {
        auto& part = parts_[j];
        if (part.empty())
            throw std::invalid_argument("part " + std::to_string(j + 1) + " is empty");
        std::sort(part.begin(), part.end());
        for (Vertex v : part) {
            if (v < 0 || v >= n)
                throw std::invalid_argument("vertex " + std::to_string(v + 1) + " out of range");
            if (part_of_[v] != -1)
                throw std::invalid_argument("vertex " + std::to_string(v + 1) +
                                            " assigned twice");
            part_of_[v] = static_cast<int>(j);
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (part_of_[v] == -1)
            throw std::invalid_argument("vertex " + std::to_string(v + 1) +
                                        " not assigned to any part");
}

const char* to_string(Answer a)
{
    switch (a) {
    case Answer::yes: return "YES";
    case Answer::no: return "NO";
    case Answer::exhausted: return "EXHAUSTED";
    }
    return "?";
}

Solution make_colored_solution(std::vector<Vertex> selected, const std::vector<Color>& colors)
{
    Solution sol;
    std::map<Vertex, Color> coloring;
    for (std::size_t i = 0; i < selected.size(); ++i)
        coloring[selected[i]] = colors[i];
    std::sort(selected.begin(), selected.end());
    sol.selected = std::move(selected);
    sol.coloring = std::move(coloring);
    return sol;
}

}  // namespace selcol
