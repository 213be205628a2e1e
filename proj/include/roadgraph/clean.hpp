#ifndef ROADGRAPH_CLEAN_HPP
#define ROADGRAPH_CLEAN_HPP

#include <string>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/parallel.hpp"
#include "roadgraph/raster.hpp"

namespace roadgraph {

/// Binarize a probability mask: out = 1 iff value >= t.
inline RasterGrid threshold(const RasterGrid& grid, double t) {
    if (t < 0.0 || t > 1.0)
        throw parameter_error("threshold must lie in [0,1], got " + std::to_string(t));
    RasterGrid out(grid.width, grid.height, RasterKind::binary, grid.transform);
    const float tf = static_cast<float>(t);
    parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out.values[i] = grid.values[i] >= tf ? 1.0f : 0.0f;
    });
    return out;
}

enum class MorphOp { open, close };

namespace detail {

// Erosion/dilation with a disk element; pixels outside the image count as
// background.
inline RasterGrid erode(const RasterGrid& g, const std::vector<std::pair<int, int>>& offs) {
    RasterGrid out(g.width, g.height, RasterKind::binary, g.transform);
    parallel_for(static_cast<std::size_t>(g.height), [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r) {
            for (int c = 0; c < g.width; ++c) {
                bool keep = g.at(static_cast<int>(r), c) != 0.0f;
                if (keep) {
                    for (const auto& [dr, dc] : offs) {
                        const int rr = static_cast<int>(r) + dr, cc = c + dc;
                        if (!g.in_bounds(rr, cc) || g.at(rr, cc) == 0.0f) {
                            keep = false;
                            break;
                        }
                    }
                }
                out.at(static_cast<int>(r), c) = keep ? 1.0f : 0.0f;
            }
        }
    });
    return out;
}

inline RasterGrid dilate(const RasterGrid& g, const std::vector<std::pair<int, int>>& offs) {
    RasterGrid out(g.width, g.height, RasterKind::binary, g.transform);
    parallel_for(static_cast<std::size_t>(g.height), [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r) {
            for (int c = 0; c < g.width; ++c) {
                bool hit = false;
                for (const auto& [dr, dc] : offs) {
                    const int rr = static_cast<int>(r) + dr, cc = c + dc;
                    if (g.in_bounds(rr, cc) && g.at(rr, cc) != 0.0f) {
                        hit = true;
                        break;
                    }
                }
                out.at(static_cast<int>(r), c) = hit ? 1.0f : 0.0f;
            }
        }
    });
    return out;
}

} // namespace detail

/// Morphological opening or closing with a disk of the given radius.
inline RasterGrid morph(const RasterGrid& binary, MorphOp op, int radius_px) {
    require_binary(binary, "morph");
    const auto offs = disk_offsets(radius_px);
    if (op == MorphOp::open) return detail::dilate(detail::erode(binary, offs), offs);
    return detail::erode(detail::dilate(binary, offs), offs);
}

/// Median filter over the disk neighborhood (center included). Ties in an
/// even, split neighborhood resolve to 1. Border pixels use the truncated
/// neighborhood.
inline RasterGrid smooth(const RasterGrid& binary, int radius_px) {
    require_binary(binary, "smooth");
    const auto offs = disk_offsets(radius_px);
    RasterGrid out(binary.width, binary.height, RasterKind::binary, binary.transform);
    parallel_for(static_cast<std::size_t>(binary.height), [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r) {
            for (int c = 0; c < binary.width; ++c) {
                int count = 0, ones = 0;
                for (const auto& [dr, dc] : offs) {
                    const int rr = static_cast<int>(r) + dr, cc = c + dc;
                    if (!binary.in_bounds(rr, cc)) continue;
                    ++count;
                    if (binary.at(rr, cc) != 0.0f) ++ones;
                }
                out.at(static_cast<int>(r), c) = (2 * ones >= count) ? 1.0f : 0.0f;
            }
        }
    });
    return out;
}

/// Mask-cleaning parameters for the post-processing pipeline.
struct CleanParams {
    double threshold = 0.3;
    int open_radius_px = 2;
    int close_radius_px = 2;
    int smooth_radius_px = 1;
};

/// threshold -> open -> close -> smooth.
inline RasterGrid clean_mask(const RasterGrid& probability, const CleanParams& p = {}) {
    RasterGrid b = threshold(probability, p.threshold);
    if (p.open_radius_px >= 1) b = morph(b, MorphOp::open, p.open_radius_px);
    if (p.close_radius_px >= 1) b = morph(b, MorphOp::close, p.close_radius_px);
    if (p.smooth_radius_px >= 1) b = smooth(b, p.smooth_radius_px);
    return b;
}

} // namespace roadgraph

#endif
