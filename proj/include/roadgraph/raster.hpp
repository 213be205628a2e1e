#ifndef ROADGRAPH_RASTER_HPP
#define ROADGRAPH_RASTER_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/geo.hpp"

namespace roadgraph {

enum class RasterKind { probability, binary };

/// 2-D scalar field in [0,1] with geo-registration. Row-major storage,
/// value(row, col) addresses pixel centers.
struct RasterGrid {
    int width = 0;
    int height = 0;
    std::vector<float> values;
    GeoTransform transform;
    RasterKind kind = RasterKind::probability;

    RasterGrid() = default;
    RasterGrid(int w, int h, RasterKind k, GeoTransform t = GeoTransform::identity(),
               float fill = 0.0f)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill),
          transform(t), kind(k) {}

    std::size_t size() const { return values.size(); }
    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height && col >= 0 && col < width;
    }
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * width + col;
    }
    float at(int row, int col) const { return values[index(row, col)]; }
    float& at(int row, int col) { return values[index(row, col)]; }

    bool is_set(int row, int col) const { return at(row, col) != 0.0f; }

    bool same_shape(const RasterGrid& other) const {
        return width == other.width && height == other.height;
    }

    void validate() const {
        if (width < 0 || height < 0)
            throw dimension_error("raster dimensions must be non-negative");
        if (values.size() != static_cast<std::size_t>(width) * height)
            throw dimension_error("raster value count does not match width*height");
        for (float v : values) {
            if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
                throw data_error("raster value outside [0,1]");
            if (kind == RasterKind::binary && v != 0.0f && v != 1.0f)
                throw data_error("binary raster contains a non-{0,1} value");
        }
        transform.validate();
    }
};

inline void require_binary(const RasterGrid& g, const char* op) {
    if (g.kind != RasterKind::binary)
        throw type_error(std::string(op) + ": expected a binary raster");
}

inline void require_same_shape(const RasterGrid& a, const RasterGrid& b, const char* op) {
    if (!a.same_shape(b))
        throw dimension_error(std::string(op) + ": grid shapes differ (" +
                              std::to_string(a.width) + "x" + std::to_string(a.height) +
                              " vs " + std::to_string(b.width) + "x" +
                              std::to_string(b.height) + ")");
}

/// Offsets of a disk structuring element: all (dr, dc) with
/// Euclidean distance <= radius from the center, center included.
inline std::vector<std::pair<int, int>> disk_offsets(int radius_px) {
    if (radius_px < 1) throw parameter_error("disk radius must be >= 1");
    std::vector<std::pair<int, int>> offs;
    const int r2 = radius_px * radius_px;
    for (int dr = -radius_px; dr <= radius_px; ++dr)
        for (int dc = -radius_px; dc <= radius_px; ++dc)
            if (dr * dr + dc * dc <= r2) offs.emplace_back(dr, dc);
    return offs;
}

} // namespace roadgraph

#endif
