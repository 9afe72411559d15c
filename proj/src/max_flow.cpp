#include "selcol/max_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace selcol {

namespace {

class Dinic {
public:
    explicit Dinic(const FlowGraph& net)
        : n_(net.num_nodes), head_(static_cast<std::size_t>(net.num_nodes)), level_(head_.size()),
          next_(head_.size())
    {
        for (const auto& a : net.arcs) {
            if (a.from < 0 || a.to < 0 || a.from >= n_ || a.to >= n_)
                throw std::invalid_argument("flow arc references unknown node");
            if (a.capacity < 0)
                throw std::invalid_argument("negative capacity");
            head_[a.from].push_back(static_cast<int>(edges_.size()));
            edges_.push_back({a.to, a.capacity});
            head_[a.to].push_back(static_cast<int>(edges_.size()));
            edges_.push_back({a.from, 0});
        }
    }

    std::int64_t run(int s, int t)
    {
        if (s == t)
            return 0;
        std::int64_t total = 0;
        while (bfs(s, t)) {
            std::fill(next_.begin(), next_.end(), 0);
            while (std::int64_t pushed = dfs(s, t, std::numeric_limits<std::int64_t>::max()))
                total += pushed;
        }
        return total;
    }

    // Flow on original arc i equals the residual capacity of its reverse edge.
    std::int64_t flow_on(int arc) const { return edges_[2 * arc + 1].cap; }

private:
    struct Residual {
        int to;
        std::int64_t cap;
    };

    bool bfs(int s, int t)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e : head_[u]) {
                const auto& r = edges_[e];
                if (r.cap > 0 && level_[r.to] < 0) {
                    level_[r.to] = level_[u] + 1;
                    q.push(r.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int u, int t, std::int64_t limit)
    {
        if (u == t)
            return limit;
        for (auto& i = next_[u]; i < head_[u].size(); ++i) {
            int e = head_[u][i];
            auto& r = edges_[e];
            if (r.cap <= 0 || level_[r.to] != level_[u] + 1)
                continue;
            if (std::int64_t got = dfs(r.to, t, std::min(limit, r.cap))) {
                r.cap -= got;
                edges_[e ^ 1].cap += got;
                return got;
            }
        }
        return 0;
    }

    int n_;
    std::vector<std::vector<int>> head_;
    std::vector<int> level_;
    std::vector<std::size_t> next_;
    std::vector<Residual> edges_;
};

}  // namespace

FlowResult max_flow(const FlowGraph& net)
{
    Dinic d(net);
    FlowResult res;
    res.value = d.run(net.source, net.sink);
    res.flow.resize(net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i)
        res.flow[i] = d.flow_on(static_cast<int>(i));
    return res;
}

}  // namespace selcol
