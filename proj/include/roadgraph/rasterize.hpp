#ifndef ROADGRAPH_RASTERIZE_HPP
#define ROADGRAPH_RASTERIZE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/parallel.hpp"
#include "roadgraph/raster.hpp"
#include "roadgraph/vector_roads.hpp"

namespace roadgraph {

/// Squared geo distance from point p to segment [s0, s1].
inline double segment_distance_sq(const GeoPoint& p, const GeoPoint& s0, const GeoPoint& s1) {
    const double vx = s1.x - s0.x, vy = s1.y - s0.y;
    const double wx = p.x - s0.x, wy = p.y - s0.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? (wx * vx + wy * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = wx - t * vx, dy = wy - t * vy;
    return dx * dx + dy * dy;
}

/// Burn road centerlines into a binary mask: a pixel is set iff the geo
/// distance from its center to the nearest point on any polyline is at most
/// halfwidth_m. An empty label set yields an all-zero mask.
inline RasterGrid rasterize_centerlines(const VectorRoadSet& labels, int width, int height,
                                        const GeoTransform& transform,
                                        double halfwidth_m = 2.0) {
    if (halfwidth_m <= 0.0) throw parameter_error("halfwidth_m must be > 0");
    transform.validate();
    labels.validate();

    RasterGrid out(width, height, RasterKind::binary, transform);
    if (labels.empty() || width == 0 || height == 0) return out;

    // Collect segments with pixel-space bounding boxes inflated by the
    // halfwidth so each row scan only touches nearby segments.
    struct Seg {
        GeoPoint a, b;
        int row_lo, row_hi, col_lo, col_hi;
    };
    const double pad_px = halfwidth_m / transform.pixel_size_m() + 2.0;
    std::vector<Seg> segs;
    for (const auto& line : labels.lines) {
        for (std::size_t i = 1; i < line.size(); ++i) {
            const PixelCoord pa = transform.inverse(line[i - 1]);
            const PixelCoord pb = transform.inverse(line[i]);
            Seg s;
            s.a = line[i - 1];
            s.b = line[i];
            s.row_lo = std::max(0, static_cast<int>(std::floor(std::min(pa.row, pb.row) - pad_px)));
            s.row_hi = std::min(height - 1, static_cast<int>(std::ceil(std::max(pa.row, pb.row) + pad_px)));
            s.col_lo = std::max(0, static_cast<int>(std::floor(std::min(pa.col, pb.col) - pad_px)));
            s.col_hi = std::min(width - 1, static_cast<int>(std::ceil(std::max(pa.col, pb.col) + pad_px)));
            if (s.row_lo <= s.row_hi && s.col_lo <= s.col_hi) segs.push_back(s);
        }
    }

    // Bucket segments by row band for the scan.
    std::vector<std::vector<std::uint32_t>> by_row(static_cast<std::size_t>(height));
    for (std::uint32_t si = 0; si < segs.size(); ++si)
        for (int r = segs[si].row_lo; r <= segs[si].row_hi; ++r)
            by_row[static_cast<std::size_t>(r)].push_back(si);

    const double hw2 = halfwidth_m * halfwidth_m;
    parallel_for(static_cast<std::size_t>(height), [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r) {
            for (std::uint32_t si : by_row[r]) {
                const Seg& s = segs[si];
                for (int c = s.col_lo; c <= s.col_hi; ++c) {
                    const std::size_t idx = out.index(static_cast<int>(r), c);
                    if (out.values[idx] != 0.0f) continue;
                    const GeoPoint g = transform.apply(static_cast<double>(c),
                                                       static_cast<double>(r));
                    if (segment_distance_sq(g, s.a, s.b) <= hw2) out.values[idx] = 1.0f;
                }
            }
        }
    });
    return out;
}

} // namespace roadgraph

#endif
