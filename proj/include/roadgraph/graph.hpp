#ifndef ROADGRAPH_GRAPH_HPP
#define ROADGRAPH_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/geo.hpp"

namespace roadgraph {

using NodeId = std::int64_t;

struct Node {
    NodeId id = 0;
    PixelCoord pixel;
    GeoPoint geo;
    /// Skeleton pixels collapsed into this node (empty for synthetic nodes).
    std::vector<std::pair<int, int>> cluster;
};

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    std::vector<PixelCoord> path;    // pixel polyline, starts at u, ends at v
    std::vector<GeoPoint> geo_path;  // the same polyline in geo coordinates
    double length_px = 0.0;
    double length_m = 0.0;
};

inline double path_length_px(const std::vector<PixelCoord>& path) {
    double sum = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i)
        sum += pixel_distance(path[i - 1], path[i]);
    return sum;
}

inline double path_length_m(const std::vector<GeoPoint>& path) {
    double sum = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i)
        sum += distance(path[i - 1], path[i]);
    return sum;
}

/// Undirected spatial multigraph. Nodes carry pixel and geo positions, edges
/// carry full polylines in both spaces. Values are immutable by convention
/// once built; operations return new graphs.
struct RoadNetwork {
    std::map<NodeId, Node> nodes;
    std::vector<Edge> edges;
    GeoTransform transform;

    bool empty() const { return nodes.empty(); }

    NodeId max_node_id() const {
        return nodes.empty() ? -1 : nodes.rbegin()->first;
    }

    Node& add_node(Node n) {
        auto [it, inserted] = nodes.emplace(n.id, std::move(n));
        if (!inserted) throw data_error("duplicate node id " + std::to_string(it->first));
        return it->second;
    }

    /// Append an edge; computes lengths from the polylines when unset.
    Edge& add_edge(Edge e) {
        if (!nodes.count(e.u) || !nodes.count(e.v))
            throw data_error("edge references unknown node");
        if (e.length_px == 0.0 && e.path.size() > 1) e.length_px = path_length_px(e.path);
        if (e.length_m == 0.0 && e.geo_path.size() > 1) e.length_m = path_length_m(e.geo_path);
        edges.push_back(std::move(e));
        return edges.back();
    }

    /// Straight edge between two existing nodes.
    Edge& add_straight_edge(NodeId u, NodeId v) {
        const Node& a = nodes.at(u);
        const Node& b = nodes.at(v);
        Edge e;
        e.u = u;
        e.v = v;
        e.path = {a.pixel, b.pixel};
        e.geo_path = {a.geo, b.geo};
        e.length_px = pixel_distance(a.pixel, b.pixel);
        e.length_m = distance(a.geo, b.geo);
        edges.push_back(std::move(e));
        return edges.back();
    }

    std::map<NodeId, int> degrees() const {
        std::map<NodeId, int> deg;
        for (const auto& [id, n] : nodes) deg[id] = 0;
        for (const Edge& e : edges) {
            deg[e.u] += 1;
            deg[e.v] += 1; // a self-loop contributes 2 to its node
        }
        return deg;
    }

    /// node -> list of (neighbor, edge index)
    std::unordered_map<NodeId, std::vector<std::pair<NodeId, std::size_t>>> adjacency() const {
        std::unordered_map<NodeId, std::vector<std::pair<NodeId, std::size_t>>> adj;
        adj.reserve(nodes.size());
        for (const auto& [id, n] : nodes) adj[id];
        for (std::size_t i = 0; i < edges.size(); ++i) {
            adj[edges[i].u].emplace_back(edges[i].v, i);
            if (edges[i].u != edges[i].v) adj[edges[i].v].emplace_back(edges[i].u, i);
        }
        return adj;
    }

    /// Connected components as sorted node-id lists, ordered by lowest id.
    std::vector<std::vector<NodeId>> components() const {
        auto adj = adjacency();
        std::unordered_set<NodeId> seen;
        std::vector<std::vector<NodeId>> comps;
        for (const auto& [id, n] : nodes) {
            if (seen.count(id)) continue;
            std::vector<NodeId> comp;
            std::vector<NodeId> stack{id};
            seen.insert(id);
            while (!stack.empty()) {
                NodeId cur = stack.back();
                stack.pop_back();
                comp.push_back(cur);
                for (const auto& [nbr, ei] : adj[cur])
                    if (seen.insert(nbr).second) stack.push_back(nbr);
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        return comps;
    }

    double total_length_m() const {
        double sum = 0.0;
        for (const Edge& e : edges) sum += e.length_m;
        return sum;
    }

    /// Canonical edge storage: u <= v per edge, edges sorted by
    /// (u, v, length_m) with the pixel polyline as the final tiebreak.
    void canonicalize() {
        for (Edge& e : edges) {
            if (e.u > e.v) {
                std::swap(e.u, e.v);
                std::reverse(e.path.begin(), e.path.end());
                std::reverse(e.geo_path.begin(), e.geo_path.end());
            }
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            if (a.u != b.u) return a.u < b.u;
            if (a.v != b.v) return a.v < b.v;
            if (a.length_m != b.length_m) return a.length_m < b.length_m;
            return std::lexicographical_compare(
                a.path.begin(), a.path.end(), b.path.begin(), b.path.end(),
                [](const PixelCoord& p, const PixelCoord& q) {
                    return p.row != q.row ? p.row < q.row : p.col < q.col;
                });
        });
    }

    void validate() const {
        for (const Edge& e : edges) {
            if (!nodes.count(e.u) || !nodes.count(e.v))
                throw data_error("edge references missing node");
            if (e.path.size() < 2 || e.geo_path.size() != e.path.size())
                throw data_error("edge polyline malformed");
            const Node& a = nodes.at(e.u);
            const Node& b = nodes.at(e.v);
            if (!(e.path.front() == a.pixel) || !(e.path.back() == b.pixel))
                throw data_error("edge path does not join its endpoints");
            if (std::fabs(e.length_px - path_length_px(e.path)) >
                1e-6 * std::max(1.0, e.length_px))
                throw data_error("edge length_px inconsistent with its path");
            if (std::fabs(e.length_m - path_length_m(e.geo_path)) >
                1e-6 * std::max(1.0, e.length_m))
                throw data_error("edge length_m inconsistent with its geo path");
            if (e.u != e.v && e.length_px <= 0.0)
                throw data_error("zero-length edge between distinct nodes");
        }
    }
};

} // namespace roadgraph

#endif
