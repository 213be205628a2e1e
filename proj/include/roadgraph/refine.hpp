#ifndef ROADGRAPH_REFINE_HPP
#define ROADGRAPH_REFINE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/graph.hpp"

namespace roadgraph {

/// Graph refinement thresholds. Comparisons are strict: components shorter
/// than min_subgraph_m are dropped, spurs shorter than max_spur_px are
/// pruned, terminals closer than max_gap_px are connected.
struct RefineParams {
    double min_subgraph_m = 80.0;
    double max_spur_px = 10.0;
    double max_gap_px = 20.0;

    void validate() const {
        if (min_subgraph_m <= 0.0 || max_spur_px <= 0.0 || max_gap_px <= 0.0)
            throw parameter_error("refine parameters must be strictly positive");
    }
};

/// Delete every connected component whose total edge length is below
/// min_subgraph_m. Surviving nodes and edges are untouched.
inline RoadNetwork remove_small_subgraphs(const RoadNetwork& g, double min_subgraph_m) {
    std::unordered_set<NodeId> doomed;
    for (const auto& comp : g.components()) {
        std::unordered_set<NodeId> members(comp.begin(), comp.end());
        double total = 0.0;
        for (const Edge& e : g.edges)
            if (members.count(e.u)) total += e.length_m;
        if (total < min_subgraph_m)
            doomed.insert(comp.begin(), comp.end());
    }
    if (doomed.empty()) return g;
    RoadNetwork out;
    out.transform = g.transform;
    for (const auto& [id, n] : g.nodes)
        if (!doomed.count(id)) out.nodes.emplace(id, n);
    for (const Edge& e : g.edges)
        if (!doomed.count(e.u) && !doomed.count(e.v)) out.edges.push_back(e);
    return out;
}

/// Iteratively remove degree-1 nodes whose sole incident edge is shorter
/// than max_spur_px, together with that edge, until a fixed point.
inline RoadNetwork prune_short_spurs(const RoadNetwork& g, double max_spur_px) {
    RoadNetwork cur = g;
    while (true) {
        auto deg = cur.degrees();
        std::unordered_set<NodeId> victims;
        std::vector<char> drop_edge(cur.edges.size(), 0);
        for (std::size_t i = 0; i < cur.edges.size(); ++i) {
            const Edge& e = cur.edges[i];
            if (e.length_px >= max_spur_px || e.u == e.v) continue;
            bool doomed = false;
            if (deg.at(e.u) == 1) {
                victims.insert(e.u);
                doomed = true;
            }
            if (deg.at(e.v) == 1) {
                victims.insert(e.v);
                doomed = true;
            }
            if (doomed) drop_edge[i] = 1;
        }
        if (victims.empty()) return cur;
        RoadNetwork next;
        next.transform = cur.transform;
        for (const auto& [id, n] : cur.nodes)
            if (!victims.count(id)) next.nodes.emplace(id, n);
        for (std::size_t i = 0; i < cur.edges.size(); ++i)
            if (!drop_edge[i]) next.edges.push_back(cur.edges[i]);
        cur = std::move(next);
    }
}

/// Single pass over degree-1 nodes in ascending id order: connect each to
/// its nearest non-adjacent node (pixel distance, ties to the lowest id)
/// when that distance is below max_gap_px. A terminal that has already
/// gained an edge this pass is skipped, so each unordered pair is bridged
/// at most once.
inline RoadNetwork connect_terminals(const RoadNetwork& g, double max_gap_px) {
    RoadNetwork out = g;
    auto deg = out.degrees();
    std::vector<NodeId> terminals;
    for (const auto& [id, d] : deg)
        if (d == 1) terminals.push_back(id);
    std::sort(terminals.begin(), terminals.end());

    // adjacency as unordered pairs, kept current as edges are added
    std::set<std::pair<NodeId, NodeId>> adjacent;
    for (const Edge& e : out.edges)
        adjacent.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
    std::unordered_set<NodeId> gained;

    for (NodeId t : terminals) {
        if (gained.count(t)) continue;
        const Node& tn = out.nodes.at(t);
        NodeId best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& [id, n] : out.nodes) {
            if (id == t) continue;
            if (adjacent.count({std::min(t, id), std::max(t, id)})) continue;
            const double d = pixel_distance(tn.pixel, n.pixel);
            if (d < best_d || (d == best_d && id < best)) {
                best_d = d;
                best = id;
            }
        }
        if (std::isfinite(best_d) && best_d < max_gap_px) {
            out.add_straight_edge(std::min(t, best), std::max(t, best));
            adjacent.emplace(std::min(t, best), std::max(t, best));
            gained.insert(t);
            gained.insert(best);
        }
    }
    return out;
}

/// Table-style refinement: prune spurs, close gaps, drop small components.
inline RoadNetwork refine(const RoadNetwork& g, const RefineParams& p = {}) {
    p.validate();
    RoadNetwork out = prune_short_spurs(g, p.max_spur_px);
    out = connect_terminals(out, p.max_gap_px);
    out = remove_small_subgraphs(out, p.min_subgraph_m);
    out.canonicalize();
    return out;
}

} // namespace roadgraph

#endif
