#ifndef ROADGRAPH_APLS_HPP
#define ROADGRAPH_APLS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/parallel.hpp"
#include "roadgraph/rng.hpp"
#include "roadgraph/shortest_path.hpp"
#include "roadgraph/snap.hpp"

namespace roadgraph {

struct AplsParams {
    int n_control = 500;
    double snap_buffer_m = 4.0;
    bool inject_midpoints = false;
    std::uint64_t rng_seed = 0;
    bool symmetric = true;

    void validate() const {
        if (n_control < 2) throw parameter_error("n_control must be >= 2");
        if (snap_buffer_m <= 0.0) throw parameter_error("snap_buffer_m must be > 0");
    }
};

struct AplsReport {
    double score = 0.0;
    double score_gt_to_prop = 0.0;
    std::optional<double> score_prop_to_gt; // absent in one-way mode
    long n_pairs_evaluated = 0;
    long n_nodes_unsnapped = 0;
};

/// Draw min(n, |nodes|) distinct node ids uniformly without replacement
/// (partial Fisher-Yates over the ascending id list, xorshift64* stream).
inline std::vector<NodeId> sample_control_nodes(const RoadNetwork& g, int n,
                                                std::uint64_t seed) {
    if (n < 2) throw parameter_error("control node count must be >= 2");
    if (g.nodes.size() < 2)
        throw metric_error("graph has fewer than 2 nodes; metric undefined");
    std::vector<NodeId> ids;
    ids.reserve(g.nodes.size());
    for (const auto& [id, node] : g.nodes) ids.push_back(id);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(n), ids.size());
    Xorshift64Star rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(ids.size() - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    return ids;
}

namespace detail {

struct DirectionalApls {
    double score = 0.0;
    long pairs = 0;
    long unsnapped = 0;
    bool defined = false;
};

/// One APLS direction: control nodes drawn on `source` (optionally after
/// midpoint injection), snapped into `target`; each control pair with a
/// finite source path contributes min(1, |Ls - Lt| / Ls), or 1 when a snap
/// or target path is missing. Returns score = 1 - mean contribution.
inline DirectionalApls apls_directional(const RoadNetwork& source,
                                        const RoadNetwork& target,
                                        const AplsParams& params) {
    DirectionalApls out;
    const RoadNetwork src = params.inject_midpoints ? inject_midpoints(source) : source;
    if (src.nodes.size() < 2) return out;

    const std::vector<NodeId> controls =
        sample_control_nodes(src, params.n_control, params.rng_seed);
    const std::size_t k = controls.size();

    // Snap all controls into a working copy of the target; each successful
    // snap inserts a node so later path queries run between graph nodes.
    RoadNetwork tgt = target;
    std::vector<std::optional<NodeId>> snapped(k);
    for (std::size_t i = 0; i < k; ++i) {
        const GeoPoint p = src.nodes.at(controls[i]).geo;
        if (auto loc = find_nearest_on_edges(tgt, p, params.snap_buffer_m))
            snapped[i] = insert_node_at(tgt, *loc);
        else
            ++out.unsnapped;
    }

    const CompactGraph cg_src = CompactGraph::build(src);
    const CompactGraph cg_tgt = CompactGraph::build(tgt);
    std::vector<int> src_idx(k), tgt_idx(k, -1);
    for (std::size_t i = 0; i < k; ++i) {
        src_idx[i] = cg_src.index.at(controls[i]);
        if (snapped[i]) tgt_idx[i] = cg_tgt.index.at(*snapped[i]);
    }

    // Per-control partial sums, filled independently and reduced in control
    // order so the result does not depend on the worker count.
    std::vector<double> part_sum(k, 0.0);
    std::vector<long> part_pairs(k, 0);
    parallel_for(k, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto ds = cg_src.distances_from(src_idx[i]);
            std::vector<double> dt;
            if (tgt_idx[i] >= 0) dt = cg_tgt.distances_from(tgt_idx[i]);
            double sum = 0.0, comp = 0.0;
            long pairs = 0;
            for (std::size_t j = i + 1; j < k; ++j) {
                const double lg = ds[static_cast<std::size_t>(src_idx[j])];
                if (!std::isfinite(lg)) continue; // no source path: skip pair
                ++pairs;
                double contribution;
                if (tgt_idx[i] < 0 || tgt_idx[j] < 0) {
                    contribution = 1.0;
                } else {
                    const double lp = dt[static_cast<std::size_t>(tgt_idx[j])];
                    if (!std::isfinite(lp))
                        contribution = 1.0;
                    else if (lg == 0.0)
                        contribution = lp == 0.0 ? 0.0 : 1.0;
                    else
                        contribution = std::min(1.0, std::fabs(lg - lp) / lg);
                }
                const double y = contribution - comp;
                const double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            part_sum[i] = sum;
            part_pairs[i] = pairs;
        }
    });

    double total = 0.0, comp = 0.0;
    long pairs = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double y = part_sum[i] - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
        pairs += part_pairs[i];
    }
    if (pairs == 0) return out;
    out.defined = true;
    out.pairs = pairs;
    out.score = 1.0 - total / static_cast<double>(pairs);
    return out;
}

} // namespace detail

/// Average Path Length Similarity between a ground-truth and a proposal
/// graph. Symmetric mode averages both directions; the reverse direction of
/// a degenerate proposal (fewer than 2 nodes, or no connected control pair)
/// scores 0.
inline AplsReport apls(const RoadNetwork& gt, const RoadNetwork& prop,
                       const AplsParams& params = {}) {
    params.validate();
    if (gt.nodes.size() < 2)
        throw metric_error("apls: ground truth has fewer than 2 nodes");

    const auto forward = detail::apls_directional(gt, prop, params);
    if (!forward.defined)
        throw metric_error("apls: no control pair is connected in the ground truth");

    AplsReport report;
    report.score_gt_to_prop = forward.score;
    report.n_pairs_evaluated = forward.pairs;
    report.n_nodes_unsnapped = forward.unsnapped;
    if (params.symmetric) {
        const auto reverse = detail::apls_directional(prop, gt, params);
        const double rev_score = reverse.defined ? reverse.score : 0.0;
        report.score_prop_to_gt = rev_score;
        report.n_pairs_evaluated += reverse.pairs;
        report.n_nodes_unsnapped += reverse.unsnapped;
        report.score = (forward.score + rev_score) / 2.0;
    } else {
        report.score = forward.score;
    }
    return report;
}

} // namespace roadgraph

#endif
