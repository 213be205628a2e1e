#ifndef ROADGRAPH_GEO_HPP
#define ROADGRAPH_GEO_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "roadgraph/errors.hpp"

namespace roadgraph {

struct GeoPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const GeoPoint& a, const GeoPoint& b) {
        return a.x == b.x && a.y == b.y;
    }
};

inline double distance(const GeoPoint& a, const GeoPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Pixel position as (row, col). Fractional values are permitted; integer
/// values address pixel centers.
struct PixelCoord {
    double row = 0.0;
    double col = 0.0;

    friend bool operator==(const PixelCoord& a, const PixelCoord& b) {
        return a.row == b.row && a.col == b.col;
    }
};

inline double pixel_distance(const PixelCoord& a, const PixelCoord& b) {
    return std::hypot(a.row - b.row, a.col - b.col);
}

/// Affine map from pixel centers (col, row) to projected coordinates (x, y):
///   x = a*col + b*row + c
///   y = d*col + e*row + f
/// Coefficients follow the 6-line world-file convention (a, d, b, e, c, f).
struct GeoTransform {
    double a = 1.0, b = 0.0, c = 0.0;
    double d = 0.0, e = 1.0, f = 0.0;

    static GeoTransform identity() { return GeoTransform{}; }

    /// North-up transform with square pixels: top-left pixel center at
    /// (origin_x, origin_y), y decreasing with row.
    static GeoTransform north_up(double pixel_size, double origin_x, double origin_y) {
        return GeoTransform{pixel_size, 0.0, origin_x, 0.0, -pixel_size, origin_y};
    }

    double det() const { return a * e - b * d; }
    bool invertible() const { return det() != 0.0 && std::isfinite(det()); }

    /// Ground size of one pixel in geo units.
    double pixel_size_m() const { return std::sqrt(std::fabs(det())); }

    GeoPoint apply(double col, double row) const {
        return {a * col + b * row + c, d * col + e * row + f};
    }
    GeoPoint apply(const PixelCoord& p) const { return apply(p.col, p.row); }

    PixelCoord inverse(const GeoPoint& g) const {
        const double dt = det();
        if (dt == 0.0 || !std::isfinite(dt))
            throw config_error("geo transform is not invertible");
        const double x = g.x - c;
        const double y = g.y - f;
        const double col = (e * x - b * y) / dt;
        const double row = (a * y - d * x) / dt;
        return {row, col};
    }

    void validate() const {
        if (!invertible())
            throw config_error("geo transform is not invertible (det = 0)");
    }

    friend bool operator==(const GeoTransform& l, const GeoTransform& r) {
        return l.a == r.a && l.b == r.b && l.c == r.c &&
               l.d == r.d && l.e == r.e && l.f == r.f;
    }
};

/// World file: six ASCII lines a, d, b, e, c, f.
inline std::string write_world_file_string(const GeoTransform& t) {
    const std::array<double, 6> v{t.a, t.d, t.b, t.e, t.c, t.f};
    std::string out;
    char buf[64];
    for (double x : v) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", x);
        out += buf;
    }
    return out;
}

inline GeoTransform parse_world_file_string(const std::string& text) {
    std::istringstream in(text);
    std::array<double, 6> v{};
    for (std::size_t i = 0; i < 6; ++i) {
        if (!(in >> v[i]))
            throw parse_error("world file: expected 6 numeric lines, failed at line " +
                              std::to_string(i + 1));
        if (!std::isfinite(v[i]))
            throw data_error("world file: non-finite coefficient at line " +
                             std::to_string(i + 1));
    }
    GeoTransform t{v[0], v[2], v[4], v[1], v[3], v[5]};
    t.validate();
    return t;
}

inline void write_world_file(const std::string& path, const GeoTransform& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot open for writing: " + path);
    out << write_world_file_string(t);
}

inline GeoTransform read_world_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_world_file_string(ss.str());
}

/// Sidecar path for a raster file: same basename with ".wld".
inline std::string world_file_path(const std::string& raster_path) {
    const std::size_t dot = raster_path.find_last_of('.');
    const std::size_t slash = raster_path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return raster_path + ".wld";
    return raster_path.substr(0, dot) + ".wld";
}

} // namespace roadgraph

#endif
