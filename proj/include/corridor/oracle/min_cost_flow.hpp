#pragma once
// Min-cost flow via successive shortest paths with Dijkstra over reduced
// costs.  Integer capacities and costs only; callers scale their rationals.

#include <cstdint>
#include <utility>
#include <vector>

namespace corridor::oracle {

class MinCostFlow {
public:
    explicit MinCostFlow(int node_count);

    // Returns the edge id of the forward edge; the paired reverse edge is id^1.
    int add_edge(int from, int to, std::int64_t capacity, std::int64_t cost);

    // Sends up to `amount` units from s to t along cheapest residual paths.
    // Requires all costs nonnegative.  Returns (flow actually sent, its cost).
    std::pair<std::int64_t, std::int64_t> solve(int s, int t, std::int64_t amount);

    std::int64_t flow_on(int edge_id) const;

    // Shortest residual distance from every node to `t` after solve(); the
    // marginal cost of routing one extra unit from that node.  Unreachable
    // nodes get distance_unreachable().
    std::vector<std::int64_t> residual_distances_to(int t) const;

    static std::int64_t distance_unreachable();

private:
    struct Edge {
        int to;
        std::int64_t cap;
        std::int64_t cost;
    };

    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::int64_t> potential_;
};

}  // namespace corridor::oracle
