#ifndef ROADGRAPH_FIXTURES_HPP
#define ROADGRAPH_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/rasterize.hpp"
#include "roadgraph/rng.hpp"
#include "roadgraph/vector_roads.hpp"

namespace roadgraph {

enum class FixtureKind { grid_city, ring, spur_forest, random_tree };

inline FixtureKind fixture_kind_from_string(const std::string& s) {
    if (s == "grid_city") return FixtureKind::grid_city;
    if (s == "ring") return FixtureKind::ring;
    if (s == "spur_forest") return FixtureKind::spur_forest;
    if (s == "random_tree") return FixtureKind::random_tree;
    throw parameter_error("unknown fixture kind '" + s + "'");
}

struct FixtureParams {
    double pixel_size_m = 0.3;
    double origin_x = 550000.0; // projected-CRS style offsets
    double origin_y = 4180000.0;
    double halfwidth_m = 2.0;
    // grid_city
    int streets_x = 3;
    int streets_y = 3;
    double spacing_m = 100.0;
    double margin_m = 30.0;
    // ring
    double ring_radius_m = 100.0;
    int ring_segments = 64;
    // spur_forest
    int ring_nodes = 10;
    int n_spurs = 40;
    double spur_len_m = 6.0;
    // random_tree
    int tree_nodes = 12;
    double extent_m = 400.0;
};

/// A mutually consistent triple: vector truth, its rasterization, and the
/// analytically known ground-truth graph.
struct Fixture {
    RasterGrid mask;
    VectorRoadSet roads;
    RoadNetwork graph;
};

namespace detail {

/// Builds a graph from explicit geo positions plus straight edges, assigning
/// node ids in the given order.
class FixtureBuilder {
public:
    explicit FixtureBuilder(const GeoTransform& t) { g_.transform = t; }

    NodeId node(GeoPoint p) {
        Node n;
        n.id = static_cast<NodeId>(g_.nodes.size());
        n.geo = p;
        n.pixel = g_.transform.inverse(p);
        return g_.add_node(std::move(n)).id;
    }

    void edge(NodeId u, NodeId v) { g_.add_straight_edge(u, v); }

    void polyline_edge(NodeId u, NodeId v, const std::vector<GeoPoint>& pts) {
        Edge e;
        e.u = u;
        e.v = v;
        e.geo_path = pts;
        e.path.reserve(pts.size());
        for (const GeoPoint& p : pts) e.path.push_back(g_.transform.inverse(p));
        e.length_px = path_length_px(e.path);
        e.length_m = path_length_m(e.geo_path);
        g_.edges.push_back(std::move(e));
    }

    RoadNetwork take() {
        g_.canonicalize();
        return std::move(g_);
    }

private:
    RoadNetwork g_;
};

inline GeoTransform fixture_transform(const FixtureParams& p, double width_m,
                                      double height_m) {
    // North-up, pixel centers, row 0 at the top of the local extent.
    return GeoTransform{p.pixel_size_m, 0.0, p.origin_x,
                        0.0, -p.pixel_size_m, p.origin_y + height_m};
}

inline std::pair<int, int> fixture_raster_shape(const FixtureParams& p, double width_m,
                                                double height_m) {
    const int w = static_cast<int>(std::ceil(width_m / p.pixel_size_m)) + 1;
    const int h = static_cast<int>(std::ceil(height_m / p.pixel_size_m)) + 1;
    return {w, h};
}

inline Fixture finish(const FixtureParams& p, double width_m, double height_m,
                      VectorRoadSet roads, RoadNetwork graph) {
    const auto [w, h] = fixture_raster_shape(p, width_m, height_m);
    Fixture fx;
    fx.mask = rasterize_centerlines(roads, w, h, graph.transform, p.halfwidth_m);
    fx.roads = std::move(roads);
    fx.graph = std::move(graph);
    return fx;
}

inline Fixture make_grid_city(const FixtureParams& p) {
    if (p.streets_x < 1 || p.streets_y < 1)
        throw parameter_error("grid_city needs at least one street per direction");
    const double width_m = 2.0 * p.margin_m + (p.streets_x - 1) * p.spacing_m;
    const double height_m = 2.0 * p.margin_m + (p.streets_y - 1) * p.spacing_m;
    const GeoTransform t = fixture_transform(p, width_m, height_m);
    auto X = [&](int i) { return p.origin_x + p.margin_m + i * p.spacing_m; };
    auto Y = [&](int j) { return p.origin_y + p.margin_m + j * p.spacing_m; };
    const double x_lo = p.origin_x, x_hi = p.origin_x + width_m;
    const double y_lo = p.origin_y, y_hi = p.origin_y + height_m;

    VectorRoadSet roads;
    for (int i = 0; i < p.streets_x; ++i) {
        roads.lines.push_back({{X(i), y_lo}, {X(i), y_hi}});
        roads.attributes.emplace_back();
    }
    for (int j = 0; j < p.streets_y; ++j) {
        roads.lines.push_back({{x_lo, Y(j)}, {x_hi, Y(j)}});
        roads.attributes.emplace_back();
    }

    FixtureBuilder b(t);
    std::map<std::pair<int, int>, NodeId> cross;
    for (int i = 0; i < p.streets_x; ++i)
        for (int j = 0; j < p.streets_y; ++j)
            cross[{i, j}] = b.node({X(i), Y(j)});
    std::map<int, std::pair<NodeId, NodeId>> v_ends, h_ends; // bottom/top, left/right
    for (int i = 0; i < p.streets_x; ++i)
        v_ends[i] = {b.node({X(i), y_lo}), b.node({X(i), y_hi})};
    for (int j = 0; j < p.streets_y; ++j)
        h_ends[j] = {b.node({x_lo, Y(j)}), b.node({x_hi, Y(j)})};
    for (int i = 0; i < p.streets_x; ++i) {
        b.edge(v_ends[i].first, cross[{i, 0}]);
        for (int j = 0; j + 1 < p.streets_y; ++j) b.edge(cross[{i, j}], cross[{i, j + 1}]);
        b.edge(cross[{i, p.streets_y - 1}], v_ends[i].second);
    }
    for (int j = 0; j < p.streets_y; ++j) {
        b.edge(h_ends[j].first, cross[{0, j}]);
        for (int i = 0; i + 1 < p.streets_x; ++i) b.edge(cross[{i, j}], cross[{i + 1, j}]);
        b.edge(cross[{p.streets_x - 1, j}], h_ends[j].second);
    }
    return finish(p, width_m, height_m, std::move(roads), b.take());
}

inline Fixture make_ring(const FixtureParams& p) {
    if (p.ring_segments < 8) throw parameter_error("ring needs >= 8 segments");
    const double extent = 2.0 * (p.ring_radius_m + p.margin_m);
    const GeoTransform t = fixture_transform(p, extent, extent);
    const double cx = p.origin_x + extent / 2.0;
    const double cy = p.origin_y + extent / 2.0;
    std::vector<GeoPoint> pts;
    for (int k = 0; k < p.ring_segments; ++k) {
        const double a = 2.0 * std::numbers::pi * k / p.ring_segments;
        pts.push_back({cx + p.ring_radius_m * std::cos(a),
                       cy + p.ring_radius_m * std::sin(a)});
    }
    pts.push_back(pts.front());

    VectorRoadSet roads;
    roads.lines.push_back(pts);
    roads.attributes.emplace_back();

    FixtureBuilder b(t);
    const NodeId n = b.node(pts.front());
    b.polyline_edge(n, n, pts);
    return finish(p, extent, extent, std::move(roads), b.take());
}

inline Fixture make_spur_forest(const FixtureParams& p, std::uint64_t seed) {
    if (p.ring_nodes < 3) throw parameter_error("spur_forest needs >= 3 ring nodes");
    const double R = p.ring_radius_m;
    const double extent = 2.0 * (R + p.spur_len_m + p.margin_m);
    const GeoTransform t = fixture_transform(p, extent, extent);
    const double cx = p.origin_x + extent / 2.0;
    const double cy = p.origin_y + extent / 2.0;

    Xorshift64Star rng(seed);
    VectorRoadSet roads;
    FixtureBuilder b(t);
    std::vector<NodeId> ring_ids;
    std::vector<GeoPoint> ring_pts;
    for (int k = 0; k < p.ring_nodes; ++k) {
        const double a = 2.0 * std::numbers::pi * k / p.ring_nodes;
        ring_pts.push_back({cx + R * std::cos(a), cy + R * std::sin(a)});
        ring_ids.push_back(b.node(ring_pts.back()));
    }
    for (int k = 0; k < p.ring_nodes; ++k) {
        const int nxt = (k + 1) % p.ring_nodes;
        b.edge(ring_ids[static_cast<std::size_t>(k)], ring_ids[static_cast<std::size_t>(nxt)]);
        roads.lines.push_back({ring_pts[static_cast<std::size_t>(k)],
                               ring_pts[static_cast<std::size_t>(nxt)]});
        roads.attributes.emplace_back();
    }
    // Short dead-end spurs hanging off the ring at random angles.
    for (int s = 0; s < p.n_spurs; ++s) {
        const double a = rng.next_double(0.0, 2.0 * std::numbers::pi);
        const double along = rng.next_double(0.0, 1.0);
        const int k = static_cast<int>(along * p.ring_nodes) % p.ring_nodes;
        const GeoPoint base = ring_pts[static_cast<std::size_t>(k)];
        const GeoPoint tip{base.x + p.spur_len_m * std::cos(a),
                           base.y + p.spur_len_m * std::sin(a)};
        const NodeId leaf = b.node(tip);
        b.edge(ring_ids[static_cast<std::size_t>(k)], leaf);
        roads.lines.push_back({base, tip});
        roads.attributes.emplace_back();
    }
    return finish(p, extent, extent, std::move(roads), b.take());
}

inline Fixture make_random_tree(const FixtureParams& p, std::uint64_t seed) {
    if (p.tree_nodes < 2) throw parameter_error("random_tree needs >= 2 nodes");
    const double extent = p.extent_m;
    const GeoTransform t = fixture_transform(p, extent, extent);
    Xorshift64Star rng(seed);

    std::vector<GeoPoint> pts;
    for (int i = 0; i < p.tree_nodes; ++i)
        pts.push_back({p.origin_x + rng.next_double(p.margin_m, extent - p.margin_m),
                       p.origin_y + rng.next_double(p.margin_m, extent - p.margin_m)});

    VectorRoadSet roads;
    FixtureBuilder b(t);
    std::vector<NodeId> ids{b.node(pts[0])};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        // connect each new point to its nearest already-placed point
        std::size_t best = 0;
        double best_d = distance(pts[i], pts[0]);
        for (std::size_t j = 1; j < i; ++j) {
            const double d = distance(pts[i], pts[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        ids.push_back(b.node(pts[i]));
        b.edge(ids[best], ids[i]);
        roads.lines.push_back({pts[best], pts[i]});
        roads.attributes.emplace_back();
    }
    return finish(p, extent, extent, std::move(roads), b.take());
}

} // namespace detail

inline Fixture make_fixture(FixtureKind kind, const FixtureParams& params = {},
                            std::uint64_t seed = 0) {
    switch (kind) {
        case FixtureKind::grid_city: return detail::make_grid_city(params);
        case FixtureKind::ring: return detail::make_ring(params);
        case FixtureKind::spur_forest: return detail::make_spur_forest(params, seed);
        case FixtureKind::random_tree: return detail::make_random_tree(params, seed);
    }
    throw parameter_error("unknown fixture kind");
}

} // namespace roadgraph

#endif
