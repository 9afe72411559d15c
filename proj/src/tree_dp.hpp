#pragma once

// Bottom-up evaluation of per-node tables over a nice tree decomposition. Sibling
// subtrees of a join may run on separate threads; every table is written by exactly
// one task after its children are complete, so results do not depend on the schedule.

#include <atomic>
#include <future>
#include <vector>

#include "selcol/tree_decomposition.hpp"

namespace selcol::detail {

template <typename ComputeNode>
class TreeDpRunner {
public:
    TreeDpRunner(const NiceTreeDecomposition& ntd, int threads, ComputeNode compute)
        : ntd_(ntd), spare_(threads > 1 ? threads - 1 : 0), compute_(std::move(compute))
    {
    }

    void run() { solve(ntd_.root); }

private:
    void solve(int node)
    {
        // Walk down the single-child chain to the next join or leaf.
        std::vector<int> chain{node};
        while (ntd_.nodes[chain.back()].children.size() == 1)
            chain.push_back(ntd_.nodes[chain.back()].children.front());
        const NiceNode& bottom = ntd_.nodes[chain.back()];
        if (bottom.children.size() == 2) {
            int left = bottom.children[0];
            int right = bottom.children[1];
            if (take_thread()) {
                auto fut = std::async(std::launch::async, [this, left] { solve(left); });
                solve(right);
                fut.get();
                spare_.fetch_add(1);
            } else {
                solve(left);
                solve(right);
            }
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            compute_(*it);
    }

    bool take_thread()
    {
        int cur = spare_.load();
        while (cur > 0)
            if (spare_.compare_exchange_weak(cur, cur - 1))
                return true;
        return false;
    }

    const NiceTreeDecomposition& ntd_;
    std::atomic<int> spare_;
    ComputeNode compute_;
};

template <typename ComputeNode>
void run_tree_dp(const NiceTreeDecomposition& ntd, int threads, ComputeNode compute)
{
    TreeDpRunner<ComputeNode> runner(ntd, threads, std::move(compute));
    runner.run();
}

}  // namespace selcol::detail
