#ifndef ROADGRAPH_SNAP_HPP
#define ROADGRAPH_SNAP_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "roadgraph/graph.hpp"
#include "roadgraph/rasterize.hpp"

namespace roadgraph {

/// A location on an edge polyline.
struct SnapLocation {
    std::size_t edge_index = 0;
    std::size_t segment = 0; // polyline segment containing the location
    double seg_t = 0.0;      // parameter within that segment, [0,1]
    double offset_m = 0.0;   // arc length from the edge's u end
    GeoPoint point;          // location in geo space
    double distance_m = 0.0; // geo distance from the query point
};

/// Arc-length prefix table of an edge's geo polyline.
inline std::vector<double> arc_prefix(const std::vector<GeoPoint>& path) {
    std::vector<double> pre(path.size(), 0.0);
    for (std::size_t i = 1; i < path.size(); ++i)
        pre[i] = pre[i - 1] + distance(path[i - 1], path[i]);
    return pre;
}

/// Point at arc length `offset` along the edge's geo polyline.
inline GeoPoint point_at_offset(const std::vector<GeoPoint>& path,
                                const std::vector<double>& pre, double offset) {
    if (offset <= 0.0) return path.front();
    if (offset >= pre.back()) return path.back();
    std::size_t seg = static_cast<std::size_t>(
                          std::upper_bound(pre.begin(), pre.end(), offset) - pre.begin()) - 1;
    seg = std::min(seg, path.size() - 2);
    const double seg_len = pre[seg + 1] - pre[seg];
    const double t = seg_len > 0.0 ? (offset - pre[seg]) / seg_len : 0.0;
    return {path[seg].x + t * (path[seg + 1].x - path[seg].x),
            path[seg].y + t * (path[seg + 1].y - path[seg].y)};
}

/// Nearest point on any edge polyline within buffer_m of p, or nullopt.
/// Ties resolve to the lowest edge index, then the smallest arc offset.
inline std::optional<SnapLocation> find_nearest_on_edges(const RoadNetwork& g,
                                                         const GeoPoint& p,
                                                         double buffer_m) {
    if (buffer_m <= 0.0) throw parameter_error("snap buffer must be > 0");
    std::optional<SnapLocation> best;
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        const auto& path = g.edges[ei].geo_path;
        double arc = 0.0;
        for (std::size_t si = 0; si + 1 < path.size(); ++si) {
            const GeoPoint& a = path[si];
            const GeoPoint& b = path[si + 1];
            const double seg_len = distance(a, b);
            const double vx = b.x - a.x, vy = b.y - a.y;
            const double len2 = vx * vx + vy * vy;
            double t = len2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const GeoPoint q{a.x + t * vx, a.y + t * vy};
            const double d = distance(p, q);
            if (d <= buffer_m) {
                const double offset = arc + t * seg_len;
                const bool better =
                    !best || d < best->distance_m ||
                    (d == best->distance_m &&
                     (ei < best->edge_index ||
                      (ei == best->edge_index && offset < best->offset_m)));
                if (better) best = SnapLocation{ei, si, t, offset, q, d};
            }
            arc += seg_len;
        }
    }
    return best;
}

namespace detail {

/// Split a polyline at (segment, t); halves share the split vertex and have
/// no repeated consecutive points.
template <typename P>
inline std::pair<std::vector<P>, std::vector<P>> split_polyline(const std::vector<P>& path,
                                                                std::size_t seg, const P& w) {
    std::vector<P> first(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(seg) + 1);
    if (!(first.back() == w)) first.push_back(w);
    std::vector<P> second{w};
    for (std::size_t i = seg + 1; i < path.size(); ++i)
        if (!(path[i] == second.back())) second.push_back(path[i]);
    return {std::move(first), std::move(second)};
}

} // namespace detail

/// Insert a node at the given edge location, splitting the edge in place:
/// the first half replaces the original edge slot, the second half is
/// appended. Locations at (or within 1e-9 relative of) an edge end reuse
/// the existing endpoint instead. Returns the node id at the location.
inline NodeId insert_node_at(RoadNetwork& g, const SnapLocation& loc) {
    Edge& e = g.edges[loc.edge_index];
    const double L = e.length_m;
    const double eps = 1e-9 * std::max(1.0, L);
    if (loc.offset_m <= eps) return e.u;
    if (loc.offset_m >= L - eps) return e.v;

    const PixelCoord pa = e.path[loc.segment];
    const PixelCoord pb = e.path[loc.segment + 1];
    const PixelCoord wpix{pa.row + loc.seg_t * (pb.row - pa.row),
                          pa.col + loc.seg_t * (pb.col - pa.col)};
    Node w;
    w.id = g.max_node_id() + 1;
    w.pixel = wpix;
    w.geo = loc.point;
    const NodeId wid = g.add_node(std::move(w)).id;

    auto [geo1, geo2] = detail::split_polyline(e.geo_path, loc.segment, loc.point);
    auto [pix1, pix2] = detail::split_polyline(e.path, loc.segment, wpix);

    Edge second;
    second.u = wid;
    second.v = e.v;
    second.path = std::move(pix2);
    second.geo_path = std::move(geo2);
    second.length_px = path_length_px(second.path);
    second.length_m = path_length_m(second.geo_path);

    e.v = wid;
    e.path = std::move(pix1);
    e.geo_path = std::move(geo1);
    e.length_px = path_length_px(e.path);
    e.length_m = path_length_m(e.geo_path);

    g.edges.push_back(std::move(second));
    return wid;
}

struct SnapPointResult {
    std::size_t edge_index = 0; // edge id at the time of the query
    double offset_m = 0.0;      // arc offset along that edge
    double distance_m = 0.0;    // geo distance from the query point
    NodeId node = 0;            // node at the snapped location
    RoadNetwork graph;          // graph with the node inserted
};

/// Snap p onto the nearest edge within buffer_m, returning the updated graph
/// and the node at the snapped location. Absent when nothing lies within the
/// buffer.
inline std::optional<SnapPointResult> snap_point(const RoadNetwork& g, const GeoPoint& p,
                                                 double buffer_m) {
    auto loc = find_nearest_on_edges(g, p, buffer_m);
    if (!loc) return std::nullopt;
    SnapPointResult res;
    res.edge_index = loc->edge_index;
    res.offset_m = loc->offset_m;
    res.distance_m = loc->distance_m;
    res.graph = g;
    res.node = insert_node_at(res.graph, *loc);
    return res;
}

/// Split every edge at its arc-length midpoint. Each original edge becomes
/// two edges whose lengths sum to the original.
inline RoadNetwork inject_midpoints(const RoadNetwork& g) {
    RoadNetwork out;
    out.transform = g.transform;
    out.nodes = g.nodes;
    for (const Edge& e : g.edges) {
        if (e.length_m <= 0.0 || e.geo_path.size() < 2) {
            out.edges.push_back(e);
            continue;
        }
        const auto pre = arc_prefix(e.geo_path);
        const double half = e.length_m / 2.0;
        std::size_t seg = static_cast<std::size_t>(
                              std::upper_bound(pre.begin(), pre.end(), half) - pre.begin()) - 1;
        seg = std::min(seg, e.geo_path.size() - 2);
        const double seg_len = pre[seg + 1] - pre[seg];
        const double t = seg_len > 0.0 ? (half - pre[seg]) / seg_len : 0.0;
        SnapLocation loc;
        loc.edge_index = out.edges.size();
        loc.segment = seg;
        loc.seg_t = t;
        loc.offset_m = half;
        loc.point = {e.geo_path[seg].x + t * (e.geo_path[seg + 1].x - e.geo_path[seg].x),
                     e.geo_path[seg].y + t * (e.geo_path[seg + 1].y - e.geo_path[seg].y)};
        out.edges.push_back(e);
        insert_node_at(out, loc);
    }
    return out;
}

} // namespace roadgraph

#endif
