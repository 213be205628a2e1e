#ifndef ROADGRAPH_PIPELINE_HPP
#define ROADGRAPH_PIPELINE_HPP

#include "roadgraph/clean.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/raster.hpp"
#include "roadgraph/refine.hpp"
#include "roadgraph/skeleton_graph.hpp"
#include "roadgraph/skeletonize.hpp"

namespace roadgraph {

/// Small-image pipeline: clean the probability mask, thin it, extract the
/// graph and refine it.
inline RoadNetwork extract_graph(const RasterGrid& probability_mask,
                                 const CleanParams& clean_params = {},
                                 const RefineParams& refine_params = {},
                                 bool do_clean = true, bool do_refine = true) {
    RasterGrid binary = do_clean ? clean_mask(probability_mask, clean_params)
                                 : threshold(probability_mask, 0.5);
    const RasterGrid skeleton = skeletonize(binary);
    RoadNetwork g = skeleton_to_graph(skeleton, probability_mask.transform);
    if (do_refine) g = refine(g, refine_params);
    return g;
}

} // namespace roadgraph

#endif
