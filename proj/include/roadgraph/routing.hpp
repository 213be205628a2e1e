#ifndef ROADGRAPH_ROUTING_HPP
#define ROADGRAPH_ROUTING_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/shortest_path.hpp"

namespace roadgraph {

struct Route {
    std::vector<NodeId> node_sequence;
    std::vector<GeoPoint> geometry;
    double total_length_m = 0.0;
};

/// Node minimizing geo distance to p; ties go to the lowest id.
inline NodeId nearest_node(const RoadNetwork& g, const GeoPoint& p) {
    if (g.nodes.empty()) throw data_error("nearest_node: graph is empty");
    NodeId best = g.nodes.begin()->first;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& [id, n] : g.nodes) { // ascending id, so ties keep the first
        const double d = distance(n.geo, p);
        if (d < best_d) {
            best_d = d;
            best = id;
        }
    }
    return best;
}

/// Minimum-length route between two nodes over length_m weights. Among
/// equal-length routes the lexicographically smallest node-id sequence wins.
inline Route shortest_route(const RoadNetwork& g, NodeId src, NodeId dst) {
    if (!g.nodes.count(src) || !g.nodes.count(dst))
        throw parameter_error("shortest_route: unknown node id");

    Route route;
    if (src == dst) {
        route.node_sequence = {src};
        route.geometry = {g.nodes.at(src).geo};
        return route;
    }

    const CompactGraph cg = CompactGraph::build(g);
    // Distance-to-destination lets the forward walk pick, at every step, the
    // smallest neighbor id that still lies on some shortest path.
    const std::vector<double> to_dst = cg.distances_from(cg.index.at(dst));
    const int src_i = cg.index.at(src);
    if (!std::isfinite(to_dst[static_cast<std::size_t>(src_i)]))
        throw unreachable_error("no route between the requested nodes");

    int cur = src_i;
    route.node_sequence.push_back(src);
    route.geometry.push_back(g.nodes.at(src).geo);
    // Relative slack for float-equal path length comparisons.
    const double scale = std::max(1.0, to_dst[static_cast<std::size_t>(src_i)]);
    const double eps = 1e-9 * scale;
    while (cur != cg.index.at(dst)) {
        int best_next = -1;
        int best_edge = -1;
        double best_w = 0.0;
        for (int k = cg.offsets[cur]; k < cg.offsets[cur + 1]; ++k) {
            const int nxt = cg.targets[k];
            const double w = cg.weights[k];
            if (std::fabs(w + to_dst[static_cast<std::size_t>(nxt)] -
                          to_dst[static_cast<std::size_t>(cur)]) > eps)
                continue;
            if (best_next < 0 || cg.ids[static_cast<std::size_t>(nxt)] <
                                     cg.ids[static_cast<std::size_t>(best_next)] ||
                (nxt == best_next && (w < best_w || (w == best_w && cg.edge_of[k] < best_edge)))) {
                best_next = nxt;
                best_edge = cg.edge_of[k];
                best_w = w;
            }
        }
        if (best_next < 0) throw unreachable_error("no route between the requested nodes");

        const Edge& e = g.edges[static_cast<std::size_t>(best_edge)];
        const NodeId cur_id = cg.ids[static_cast<std::size_t>(cur)];
        std::vector<GeoPoint> seg = e.geo_path;
        if (e.u != cur_id) std::reverse(seg.begin(), seg.end());
        for (std::size_t i = 1; i < seg.size(); ++i) route.geometry.push_back(seg[i]);
        route.total_length_m += e.length_m;
        route.node_sequence.push_back(cg.ids[static_cast<std::size_t>(best_next)]);
        cur = best_next;
    }
    return route;
}

} // namespace roadgraph

#endif
