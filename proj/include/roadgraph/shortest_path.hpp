#ifndef ROADGRAPH_SHORTEST_PATH_HPP
#define ROADGRAPH_SHORTEST_PATH_HPP

#include <limits>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "roadgraph/graph.hpp"

namespace roadgraph {

constexpr double kInfDist = std::numeric_limits<double>::infinity();

/// Dense CSR view of a RoadNetwork for shortest-path queries over length_m
/// weights. Self-loops are omitted; parallel edges are all retained.
struct CompactGraph {
    std::vector<NodeId> ids; // dense index -> node id, ascending
    std::unordered_map<NodeId, int> index;
    std::vector<int> offsets;
    std::vector<int> targets;
    std::vector<double> weights;
    std::vector<int> edge_of; // original edge index per CSR entry

    static CompactGraph build(const RoadNetwork& g) {
        CompactGraph c;
        c.ids.reserve(g.nodes.size());
        for (const auto& [id, n] : g.nodes) {
            c.index.emplace(id, static_cast<int>(c.ids.size()));
            c.ids.push_back(id);
        }
        const int n = static_cast<int>(c.ids.size());
        std::vector<int> counts(n, 0);
        for (const Edge& e : g.edges) {
            if (e.u == e.v) continue;
            ++counts[c.index.at(e.u)];
            ++counts[c.index.at(e.v)];
        }
        c.offsets.assign(n + 1, 0);
        for (int i = 0; i < n; ++i) c.offsets[i + 1] = c.offsets[i] + counts[i];
        c.targets.resize(c.offsets[n]);
        c.weights.resize(c.offsets[n]);
        c.edge_of.resize(c.offsets[n]);
        std::vector<int> cursor(c.offsets.begin(), c.offsets.end() - 1);
        for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
            const Edge& e = g.edges[ei];
            if (e.u == e.v) continue;
            const int ui = c.index.at(e.u), vi = c.index.at(e.v);
            c.targets[cursor[ui]] = vi;
            c.weights[cursor[ui]] = e.length_m;
            c.edge_of[cursor[ui]++] = static_cast<int>(ei);
            c.targets[cursor[vi]] = ui;
            c.weights[cursor[vi]] = e.length_m;
            c.edge_of[cursor[vi]++] = static_cast<int>(ei);
        }
        return c;
    }

    int size() const { return static_cast<int>(ids.size()); }

    /// Distances from multiple virtual sources, truncated at max_dist.
    std::vector<double> distances_from(const std::vector<std::pair<int, double>>& sources,
                                       double max_dist = kInfDist) const {
        std::vector<double> dist(ids.size(), kInfDist);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (const auto& [i, d] : sources) {
            if (d < dist[i]) {
                dist[i] = d;
                pq.emplace(d, i);
            }
        }
        while (!pq.empty()) {
            const auto [d, i] = pq.top();
            pq.pop();
            if (d > dist[i]) continue;
            for (int k = offsets[i]; k < offsets[i + 1]; ++k) {
                const double nd = d + weights[k];
                if (nd < dist[targets[k]] && nd <= max_dist) {
                    dist[targets[k]] = nd;
                    pq.emplace(nd, targets[k]);
                }
            }
        }
        return dist;
    }

    std::vector<double> distances_from(int src, double max_dist = kInfDist) const {
        return distances_from(std::vector<std::pair<int, double>>{{src, 0.0}}, max_dist);
    }
};

} // namespace roadgraph

#endif
