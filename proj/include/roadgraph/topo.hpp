#ifndef ROADGRAPH_TOPO_HPP
#define ROADGRAPH_TOPO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/parallel.hpp"
#include "roadgraph/rng.hpp"
#include "roadgraph/shortest_path.hpp"
#include "roadgraph/snap.hpp"

namespace roadgraph {

struct TopoParams {
    double hole_size_m = 4.0;
    double radius_m = 300.0;
    double sample_spacing_m = 5.0;
    double seed_spacing_m = 50.0;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (hole_size_m <= 0.0 || radius_m <= 0.0 || sample_spacing_m <= 0.0 ||
            seed_spacing_m <= 0.0)
            throw parameter_error("topo parameters must be strictly positive");
        if (hole_size_m >= radius_m)
            throw parameter_error("hole_size_m must be smaller than radius_m");
    }
};

struct TopoReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long tp = 0;
    long fp = 0;
    long fn = 0;
};

namespace detail {

/// A start location for local sampling: an edge, an arc offset and the geo
/// point there.
struct TopoSeed {
    std::size_t edge_index;
    double offset_m;
    GeoPoint point;
};

/// Sample points at arc distances k*spacing from the start location, along
/// every path within radius of it. Points are located on edges wherever the
/// shortest distance from the start attains k*spacing.
inline std::vector<GeoPoint> local_samples(const RoadNetwork& g, const CompactGraph& cg,
                                           std::size_t start_edge, double start_offset,
                                           double radius, double spacing) {
    const Edge& host = g.edges[start_edge];
    const double L0 = host.length_m;
    std::vector<std::pair<int, double>> sources;
    if (host.u == host.v) {
        sources.emplace_back(cg.index.at(host.u),
                             std::min(start_offset, L0 - start_offset));
    } else {
        sources.emplace_back(cg.index.at(host.u), start_offset);
        sources.emplace_back(cg.index.at(host.v), L0 - start_offset);
    }
    const std::vector<double> dist = cg.distances_from(sources, radius);

    std::vector<GeoPoint> samples;
    const int kmax = static_cast<int>(std::floor(radius / spacing));
    std::vector<double> hits;
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        const Edge& e = g.edges[ei];
        const double L = e.length_m;
        if (L <= 0.0) continue;
        const bool is_start = ei == start_edge;
        const double du = dist[static_cast<std::size_t>(cg.index.at(e.u))];
        const double dv = e.u == e.v ? du : dist[static_cast<std::size_t>(cg.index.at(e.v))];
        if (!is_start && !std::isfinite(du) && !std::isfinite(dv)) continue;

        // Distance from the start to the point at arc position s on this
        // edge is the lower envelope of up to three linear pieces.
        auto value = [&](double s) {
            double best = kInfDist;
            if (std::isfinite(du)) best = std::min(best, du + s);
            if (std::isfinite(dv)) best = std::min(best, dv + (L - s));
            if (is_start) best = std::min(best, std::fabs(s - start_offset));
            return best;
        };
        const auto pre = arc_prefix(e.geo_path);
        for (int k = 0; k <= kmax; ++k) {
            const double target = k * spacing;
            hits.clear();
            if (std::isfinite(du)) {
                const double s = target - du;
                if (s >= 0.0 && s <= L && value(s) >= target - 1e-9) hits.push_back(s);
            }
            if (std::isfinite(dv)) {
                const double s = L - (target - dv);
                if (s >= 0.0 && s <= L && value(s) >= target - 1e-9) hits.push_back(s);
            }
            if (is_start) {
                for (const double s : {start_offset - target, start_offset + target}) {
                    if (s >= 0.0 && s <= L && value(s) >= target - 1e-9) hits.push_back(s);
                }
            }
            std::sort(hits.begin(), hits.end());
            double last = -1.0;
            for (const double s : hits) {
                if (s - last < 1e-9) continue;
                last = s;
                samples.push_back(point_at_offset(e.geo_path, pre, s));
            }
        }
    }
    return samples;
}

/// Greedy one-to-one matching by ascending distance with cutoff; returns the
/// number of matched pairs.
inline long greedy_match(const std::vector<GeoPoint>& gt, const std::vector<GeoPoint>& prop,
                         double hole) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> cands;
    for (std::size_t i = 0; i < gt.size(); ++i)
        for (std::size_t j = 0; j < prop.size(); ++j) {
            const double d = distance(gt[i], prop[j]);
            if (d <= hole) cands.emplace_back(d, i, j);
        }
    std::sort(cands.begin(), cands.end());
    std::vector<char> gt_used(gt.size(), 0), prop_used(prop.size(), 0);
    long matched = 0;
    for (const auto& [d, i, j] : cands) {
        if (gt_used[i] || prop_used[j]) continue;
        gt_used[i] = prop_used[j] = 1;
        ++matched;
    }
    return matched;
}

} // namespace detail

/// TOPO metric: seeds are laid out along ground-truth edges roughly every
/// seed_spacing_m (random phase per edge from rng_seed); from each seed the
/// locally reachable stretch of both graphs (radius_m of arc distance) is
/// sampled every sample_spacing_m and the sample sets are matched one-to-one
/// within hole_size_m. Matched samples count as true positives, unmatched
/// proposal samples as false positives and unmatched ground-truth samples as
/// false negatives; a seed with no proposal start within hole_size_m turns
/// all its ground-truth samples into false negatives.
inline TopoReport topo(const RoadNetwork& gt, const RoadNetwork& prop,
                       const TopoParams& params = {}) {
    params.validate();
    if (gt.nodes.empty()) throw metric_error("topo: ground truth graph is empty");

    // Seed placement: one random phase per edge, then every seed_spacing_m.
    std::vector<detail::TopoSeed> seeds;
    Xorshift64Star rng(params.rng_seed);
    for (std::size_t ei = 0; ei < gt.edges.size(); ++ei) {
        const Edge& e = gt.edges[ei];
        if (e.length_m <= 0.0) continue;
        const double phase = rng.next_double(0.0, params.seed_spacing_m);
        const auto pre = arc_prefix(e.geo_path);
        for (double o = phase; o < e.length_m; o += params.seed_spacing_m)
            seeds.push_back({ei, o, point_at_offset(e.geo_path, pre, o)});
    }

    const CompactGraph cg_gt = CompactGraph::build(gt);
    const CompactGraph cg_prop = prop.nodes.empty() ? CompactGraph{} : CompactGraph::build(prop);

    std::vector<long> tp(seeds.size(), 0), fp(seeds.size(), 0), fn(seeds.size(), 0);
    parallel_for(seeds.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t si = lo; si < hi; ++si) {
            const auto& seed = seeds[si];
            const std::vector<GeoPoint> gt_samples = detail::local_samples(
                gt, cg_gt, seed.edge_index, seed.offset_m, params.radius_m,
                params.sample_spacing_m);
            std::optional<SnapLocation> start;
            if (!prop.edges.empty())
                start = find_nearest_on_edges(prop, seed.point, params.hole_size_m);
            if (!start) {
                fn[si] = static_cast<long>(gt_samples.size());
                continue;
            }
            const std::vector<GeoPoint> prop_samples = detail::local_samples(
                prop, cg_prop, start->edge_index, start->offset_m, params.radius_m,
                params.sample_spacing_m);
            const long matched = detail::greedy_match(gt_samples, prop_samples,
                                                      params.hole_size_m);
            tp[si] = matched;
            fp[si] = static_cast<long>(prop_samples.size()) - matched;
            fn[si] = static_cast<long>(gt_samples.size()) - matched;
        }
    });

    TopoReport rep;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        rep.tp += tp[i];
        rep.fp += fp[i];
        rep.fn += fn[i];
    }
    rep.precision = rep.tp + rep.fp > 0 ? static_cast<double>(rep.tp) / (rep.tp + rep.fp) : 0.0;
    rep.recall = rep.tp + rep.fn > 0 ? static_cast<double>(rep.tp) / (rep.tp + rep.fn) : 0.0;
    rep.f1 = rep.precision + rep.recall > 0.0
                 ? 2.0 * rep.precision * rep.recall / (rep.precision + rep.recall)
                 : 0.0;
    return rep;
}

} // namespace roadgraph

#endif
