#include "corridor/oracle/min_cost_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace corridor::oracle {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
}

MinCostFlow::MinCostFlow(int node_count) : n_(node_count), adj_(node_count) {}

int MinCostFlow::add_edge(int from, int to, std::int64_t capacity, std::int64_t cost) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({to, capacity, cost});
    edges_.push_back({from, 0, -cost});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
}

std::pair<std::int64_t, std::int64_t> MinCostFlow::solve(int s, int t, std::int64_t amount) {
    potential_.assign(n_, 0);  // valid start: all original costs nonnegative
    std::int64_t flow = 0, cost = 0;
    std::vector<std::int64_t> dist(n_);
    std::vector<int> via(n_);
    using Item = std::pair<std::int64_t, int>;
    while (flow < amount) {
        dist.assign(n_, kInf);
        via.assign(n_, -1);
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[s] = 0;
        pq.push({0, s});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d > dist[v]) continue;
            if (v == t) break;  // settled; unpopped nodes are at least this far
            for (int id : adj_[v]) {
                const Edge& e = edges_[id];
                if (e.cap <= 0) continue;
                const std::int64_t nd = d + e.cost + potential_[v] - potential_[e.to];
                if (nd < dist[e.to]) {
                    dist[e.to] = nd;
                    via[e.to] = id;
                    pq.push({nd, e.to});
                }
            }
        }
        if (dist[t] >= kInf) break;  // no augmenting path left
        // Capping at dist[t] keeps reduced costs nonnegative both on nodes
        // the search stopped short of and on ones the source can't reach.
        for (int v = 0; v < n_; ++v) potential_[v] += std::min(dist[v], dist[t]);
        std::int64_t push = amount - flow;
        for (int v = t; v != s; v = edges_[via[v] ^ 1].to)
            push = std::min(push, edges_[via[v]].cap);
        for (int v = t; v != s; v = edges_[via[v] ^ 1].to) {
            edges_[via[v]].cap -= push;
            edges_[via[v] ^ 1].cap += push;
            cost += push * edges_[via[v]].cost;
        }
        flow += push;
    }
    return {flow, cost};
}

std::int64_t MinCostFlow::flow_on(int edge_id) const {
    return edges_[edge_id ^ 1].cap;  // units pushed = reverse residual
}

std::vector<std::int64_t> MinCostFlow::residual_distances_to(int t) const {
    if (potential_.empty()) throw std::logic_error("residual distances need a prior solve()");
    // One Dijkstra on the reversed residual graph with reduced costs, then
    // undo the potentials: dist(v -> t) = dist_red(v -> t) - pi(v) + pi(t).
    std::vector<std::int64_t> dist(n_, kInf);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[t] = 0;
    pq.push({0, t});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (int id : adj_[v]) {
            // Edge id leaves v toward u; its pair id^1 is the residual edge
            // u->v, which is what a reverse traversal consumes.
            const int back = id ^ 1;
            const int u = edges_[id].to;
            if (edges_[back].cap <= 0) continue;  // u->v has no residual capacity
            const std::int64_t reduced = edges_[back].cost + potential_[u] - potential_[v];
            const std::int64_t nd = d + reduced;
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.push({nd, u});
            }
        }
    }
    std::vector<std::int64_t> out(n_, kInf);
    for (int v = 0; v < n_; ++v)
        if (dist[v] < kInf) out[v] = dist[v] - potential_[v] + potential_[t];
    return out;
}

std::int64_t MinCostFlow::distance_unreachable() { return kInf; }

}  // namespace corridor::oracle
