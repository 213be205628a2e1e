#ifndef ROADGRAPH_TILING_HPP
#define ROADGRAPH_TILING_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "roadgraph/clean.hpp"
#include "roadgraph/errors.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/parallel.hpp"
#include "roadgraph/raster.hpp"
#include "roadgraph/refine.hpp"
#include "roadgraph/skeleton_graph.hpp"
#include "roadgraph/skeletonize.hpp"

namespace roadgraph {

struct TileWindow {
    int row0 = 0;
    int col0 = 0;
    int rows = 0;
    int cols = 0;

    friend bool operator==(const TileWindow& a, const TileWindow& b) {
        return a.row0 == b.row0 && a.col0 == b.col0 && a.rows == b.rows && a.cols == b.cols;
    }
};

struct TileScheme {
    int window_px = 1300;
    int overlap_px = 0;
    int width = 0;
    int height = 0;
    std::vector<TileWindow> tiles;
};

namespace detail {

/// Window origins along one axis: advance by stride, shift the last origin
/// inward so the final window ends exactly at the extent edge.
inline std::vector<int> axis_origins(int extent, int window, int stride) {
    std::vector<int> origins;
    if (extent <= window) {
        origins.push_back(0);
        return origins;
    }
    int pos = 0;
    while (true) {
        if (pos + window >= extent) {
            origins.push_back(extent - window);
            break;
        }
        origins.push_back(pos);
        pos += stride;
    }
    return origins;
}

} // namespace detail

/// Lay out overlapping windows covering a width x height extent. Adjacent
/// tiles overlap by exactly overlap_px except where the trailing tile is
/// shifted inward to meet the extent edge. A window larger than the extent
/// yields a single tile equal to the extent.
inline TileScheme plan_tiles(int width, int height, int window_px, int overlap_px) {
    if (window_px < 1) throw parameter_error("window_px must be >= 1");
    if (overlap_px < 0 || overlap_px >= window_px)
        throw parameter_error("overlap_px must satisfy 0 <= overlap < window");
    TileScheme scheme;
    scheme.window_px = window_px;
    scheme.overlap_px = overlap_px;
    scheme.width = width;
    scheme.height = height;
    const int stride = window_px - overlap_px;
    const auto rows = detail::axis_origins(height, window_px, stride);
    const auto cols = detail::axis_origins(width, window_px, stride);
    for (int r0 : rows)
        for (int c0 : cols)
            scheme.tiles.push_back({r0, c0, std::min(window_px, height),
                                    std::min(window_px, width)});
    return scheme;
}

/// Streaming (sum, count) merge of per-tile probability masks. Tiles may be
/// added in any order; each pixel of the final mask is the arithmetic mean
/// of every tile-level value covering it, where a tile-level value is the
/// mean over that tile's per-model predictions.
class TileAccumulator {
public:
    TileAccumulator(int width, int height, GeoTransform transform)
        : width_(width), height_(height), transform_(transform),
          sum_(static_cast<std::size_t>(width) * height, 0.0),
          count_(static_cast<std::size_t>(width) * height, 0) {}

    void add_tile(const TileWindow& w, const std::vector<RasterGrid>& models) {
        const std::string where = "tile (" + std::to_string(w.row0) + "," +
                                  std::to_string(w.col0) + ")";
        if (models.empty()) throw dimension_error(where + ": no model predictions");
        for (const RasterGrid& m : models)
            if (m.width != w.cols || m.height != w.rows)
                throw dimension_error(where + ": model grid is " + std::to_string(m.width) +
                                      "x" + std::to_string(m.height) + ", window wants " +
                                      std::to_string(w.cols) + "x" + std::to_string(w.rows));
        if (w.row0 < 0 || w.col0 < 0 || w.row0 + w.rows > height_ || w.col0 + w.cols > width_)
            throw dimension_error(where + ": window exceeds the extent");
        const double inv_models = 1.0 / static_cast<double>(models.size());
        for (int r = 0; r < w.rows; ++r) {
            const std::size_t out_row =
                static_cast<std::size_t>(w.row0 + r) * width_ + w.col0;
            for (int c = 0; c < w.cols; ++c) {
                double acc = 0.0;
                const std::size_t in = static_cast<std::size_t>(r) * w.cols + c;
                for (const RasterGrid& m : models) acc += m.values[in];
                sum_[out_row + c] += acc * inv_models;
                count_[out_row + c] += 1;
            }
        }
    }

    RasterGrid finalize() const {
        RasterGrid out(width_, height_, RasterKind::probability, transform_);
        for (std::size_t i = 0; i < sum_.size(); ++i) {
            if (count_[i] == 0)
                throw data_error("tile plan left pixel " + std::to_string(i) +
                                 " uncovered");
            out.values[i] = static_cast<float>(sum_[i] / count_[i]);
        }
        return out;
    }

private:
    int width_, height_;
    GeoTransform transform_;
    std::vector<double> sum_;
    std::vector<std::uint32_t> count_;
};

/// Merge a materialized list of (window, per-model grids) into one
/// normalized probability mask.
inline RasterGrid merge_tiles(
    const std::vector<std::pair<TileWindow, std::vector<RasterGrid>>>& tile_masks,
    const TileScheme& scheme, GeoTransform transform) {
    TileAccumulator acc(scheme.width, scheme.height, transform);
    for (const auto& [w, models] : tile_masks) acc.add_tile(w, models);
    return acc.finalize();
}

/// Supplies the per-model probability grids for one window.
using TileProvider = std::function<std::vector<RasterGrid>(const TileWindow&)>;

/// Cut windows out of one big mask (the trivial provider).
inline TileProvider slicing_provider(const RasterGrid& mask) {
    return [&mask](const TileWindow& w) {
        RasterGrid tile(w.cols, w.rows, mask.kind);
        for (int r = 0; r < w.rows; ++r)
            for (int c = 0; c < w.cols; ++c)
                tile.at(r, c) = mask.at(w.row0 + r, w.col0 + c);
        return std::vector<RasterGrid>{std::move(tile)};
    };
}

/// Merge every planned tile from the provider into one full-extent mask.
/// Provider calls and model averaging run in parallel batches; accumulation
/// happens in tile order so the output is identical for any worker count.
inline RasterGrid merge_from_provider(const TileScheme& scheme, GeoTransform transform,
                                      const TileProvider& provider) {
    TileAccumulator acc(scheme.width, scheme.height, transform);
    const std::size_t n = scheme.tiles.size();
    const std::size_t batch = std::max<std::size_t>(1, static_cast<std::size_t>(max_threads()));
    std::vector<std::vector<RasterGrid>> fetched(std::min(batch, n));
    for (std::size_t base = 0; base < n; base += batch) {
        const std::size_t cnt = std::min(batch, n - base);
        fetched.resize(cnt);
        parallel_for(cnt, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                fetched[i] = provider(scheme.tiles[base + i]);
        });
        for (std::size_t i = 0; i < cnt; ++i) {
            acc.add_tile(scheme.tiles[base + i], fetched[i]);
            fetched[i].clear();
        }
    }
    return acc.finalize();
}

/// Full large-image pipeline: plan windows, merge per-tile predictions,
/// clean, skeletonize, extract the graph and refine it.
inline RoadNetwork extract_large(int width, int height, const GeoTransform& transform,
                                 const TileProvider& provider,
                                 int window_px = 1300, int overlap_px = 260,
                                 const CleanParams& clean_params = {},
                                 const RefineParams& refine_params = {}) {
    transform.validate();
    const TileScheme scheme = plan_tiles(width, height, window_px, overlap_px);
    const RasterGrid mask = merge_from_provider(scheme, transform, provider);
    const RasterGrid cleaned = clean_mask(mask, clean_params);
    const RasterGrid skeleton = skeletonize(cleaned);
    RoadNetwork graph = skeleton_to_graph(skeleton, transform);
    return refine(graph, refine_params);
}

} // namespace roadgraph

#endif
