#ifndef ROADGRAPH_GEOJSON_HPP
#define ROADGRAPH_GEOJSON_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roadgraph/errors.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/vector_roads.hpp"

namespace roadgraph {

using ordered_json = nlohmann::ordered_json;

/// Quantize to 9 significant digits (sub-millimeter at city scale) so file
/// output is short and written values reparse bit-for-bit.
inline double quantize9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::strtod(buf, nullptr);
}

namespace detail {

inline void check_coordinate(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y))
        throw data_error("non-finite coordinate in GeoJSON input");
}

/// Coordinates that all fit inside lon/lat bounds are likely geographic
/// degrees; every metric threshold in the toolkit assumes meters.
inline void check_meters(const std::vector<GeoPoint>& pts, bool assume_meters) {
    if (assume_meters || pts.empty()) return;
    for (const GeoPoint& p : pts)
        if (std::fabs(p.x) > 180.0 || std::fabs(p.y) > 90.0) return;
    throw data_error(
        "coordinates look geographic (degrees); thresholds require a projected "
        "meter CRS - pass --assume-meters to override");
}

inline ordered_json coords_json(const std::vector<GeoPoint>& pts) {
    ordered_json arr = ordered_json::array();
    for (const GeoPoint& p : pts)
        arr.push_back(ordered_json::array({quantize9(p.x), quantize9(p.y)}));
    return arr;
}

inline std::vector<GeoPoint> parse_line_coords(const ordered_json& coords,
                                               std::size_t feature_index) {
    if (!coords.is_array() || coords.size() < 2)
        throw data_error("feature " + std::to_string(feature_index) +
                         ": LineString needs at least 2 positions");
    std::vector<GeoPoint> line;
    line.reserve(coords.size());
    for (const auto& c : coords) {
        if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number())
            throw data_error("feature " + std::to_string(feature_index) +
                             ": malformed position");
        const double x = c[0].get<double>();
        const double y = c[1].get<double>();
        check_coordinate(x, y);
        if (!line.empty() && line.back().x == x && line.back().y == y)
            throw data_error("feature " + std::to_string(feature_index) +
                             ": repeated consecutive position");
        line.push_back({x, y});
    }
    return line;
}

inline ordered_json parse_feature_collection(const std::string& bytes) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("GeoJSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array())
        throw data_error("GeoJSON: expected a FeatureCollection with a features array");
    return doc;
}

} // namespace detail

/// Parse road centerlines from a FeatureCollection. LineStrings become one
/// polyline each, MultiLineStrings one per part; other features are skipped
/// and counted in *skipped when given.
inline VectorRoadSet read_roads_geojson(const std::string& bytes, int* skipped = nullptr,
                                        bool assume_meters = false) {
    const ordered_json doc = detail::parse_feature_collection(bytes);
    VectorRoadSet roads;
    int skip_count = 0;
    std::size_t fi = 0;
    for (const auto& feature : doc["features"]) {
        const std::size_t index = fi++;
        if (!feature.is_object() || !feature.contains("geometry") ||
            !feature["geometry"].is_object()) {
            ++skip_count;
            continue;
        }
        const auto& geom = feature["geometry"];
        const std::string type = geom.value("type", "");
        if (type == "LineString") {
            roads.lines.push_back(detail::parse_line_coords(geom["coordinates"], index));
            roads.attributes.emplace_back();
        } else if (type == "MultiLineString") {
            if (!geom.contains("coordinates") || !geom["coordinates"].is_array())
                throw data_error("feature " + std::to_string(index) +
                                 ": malformed MultiLineString");
            for (const auto& part : geom["coordinates"]) {
                roads.lines.push_back(detail::parse_line_coords(part, index));
                roads.attributes.emplace_back();
            }
        } else {
            ++skip_count;
        }
    }
    if (skipped) *skipped = skip_count;
    for (const auto& line : roads.lines) detail::check_meters(line, assume_meters);
    return roads;
}

inline std::string write_roads_geojson(const VectorRoadSet& roads) {
    ordered_json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = ordered_json::array();
    for (std::size_t i = 0; i < roads.lines.size(); ++i) {
        ordered_json f;
        f["type"] = "Feature";
        f["geometry"]["type"] = "LineString";
        f["geometry"]["coordinates"] = detail::coords_json(roads.lines[i]);
        f["properties"] = ordered_json::object();
        if (i < roads.attributes.size())
            for (const auto& [k, v] : roads.attributes[i]) f["properties"][k] = v;
        doc["features"].push_back(std::move(f));
    }
    return doc.dump() + "\n";
}

/// Serialize a graph: Point features (properties {"id"}) in ascending id
/// order, then LineString features (properties {"u","v","length_m",
/// "length_px"}) ascending by (u, v, length_m).
inline std::string write_graph_geojson(const RoadNetwork& g) {
    ordered_json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = ordered_json::array();
    for (const auto& [id, n] : g.nodes) {
        ordered_json f;
        f["type"] = "Feature";
        f["geometry"]["type"] = "Point";
        f["geometry"]["coordinates"] =
            ordered_json::array({quantize9(n.geo.x), quantize9(n.geo.y)});
        f["properties"]["id"] = id;
        doc["features"].push_back(std::move(f));
    }
    std::vector<std::size_t> order(g.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Edge& ea = g.edges[a];
        const Edge& eb = g.edges[b];
        const NodeId ua = std::min(ea.u, ea.v), va = std::max(ea.u, ea.v);
        const NodeId ub = std::min(eb.u, eb.v), vb = std::max(eb.u, eb.v);
        if (ua != ub) return ua < ub;
        if (va != vb) return va < vb;
        return ea.length_m < eb.length_m;
    });
    for (std::size_t i : order) {
        const Edge& e = g.edges[i];
        ordered_json f;
        f["type"] = "Feature";
        f["geometry"]["type"] = "LineString";
        f["geometry"]["coordinates"] = detail::coords_json(
            e.u <= e.v ? e.geo_path
                       : std::vector<GeoPoint>(e.geo_path.rbegin(), e.geo_path.rend()));
        f["properties"]["u"] = std::min(e.u, e.v);
        f["properties"]["v"] = std::max(e.u, e.v);
        f["properties"]["length_m"] = quantize9(e.length_m);
        f["properties"]["length_px"] = quantize9(e.length_px);
        doc["features"].push_back(std::move(f));
    }
    return doc.dump() + "\n";
}

/// Rebuild a graph from its GeoJSON form. Pixel positions are recovered
/// through the transform when one is supplied (identity otherwise).
inline RoadNetwork read_graph_geojson(const std::string& bytes,
                                      const std::optional<GeoTransform>& transform = std::nullopt,
                                      bool assume_meters = false) {
    const ordered_json doc = detail::parse_feature_collection(bytes);
    RoadNetwork g;
    g.transform = transform.value_or(GeoTransform::identity());

    std::vector<GeoPoint> all_points;
    for (const auto& feature : doc["features"]) {
        if (!feature.is_object() || !feature.contains("geometry")) continue;
        const auto& geom = feature["geometry"];
        if (geom.value("type", "") != "Point") continue;
        const auto& c = geom["coordinates"];
        if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number())
            throw data_error("graph GeoJSON: malformed Point coordinates");
        const double x = c[0].get<double>(), y = c[1].get<double>();
        detail::check_coordinate(x, y);
        if (!feature.contains("properties") || !feature["properties"].contains("id"))
            throw data_error("graph GeoJSON: Point feature lacks an id property");
        Node n;
        n.id = feature["properties"]["id"].get<NodeId>();
        n.geo = {x, y};
        n.pixel = g.transform.inverse(n.geo);
        all_points.push_back(n.geo);
        g.add_node(std::move(n));
    }
    detail::check_meters(all_points, assume_meters);

    std::size_t fi = 0;
    for (const auto& feature : doc["features"]) {
        const std::size_t index = fi++;
        if (!feature.is_object() || !feature.contains("geometry")) continue;
        const auto& geom = feature["geometry"];
        if (geom.value("type", "") != "LineString") continue;
        const auto line = detail::parse_line_coords(geom["coordinates"], index);
        detail::check_meters(line, assume_meters);
        if (!feature.contains("properties"))
            throw data_error("graph GeoJSON: LineString lacks properties");
        const auto& props = feature["properties"];
        if (!props.contains("u") || !props.contains("v"))
            throw data_error("graph GeoJSON: LineString lacks u/v endpoints");
        Edge e;
        e.u = props["u"].get<NodeId>();
        e.v = props["v"].get<NodeId>();
        if (!g.nodes.count(e.u) || !g.nodes.count(e.v))
            throw data_error("graph GeoJSON: edge references unknown node id");
        e.geo_path = line;
        e.path.reserve(line.size());
        for (const GeoPoint& p : line) e.path.push_back(g.transform.inverse(p));
        e.length_m = props.contains("length_m") ? props["length_m"].get<double>()
                                                : path_length_m(e.geo_path);
        e.length_px = props.contains("length_px") ? props["length_px"].get<double>()
                                                  : path_length_px(e.path);
        g.edges.push_back(std::move(e));
    }
    return g;
}

} // namespace roadgraph

#endif
