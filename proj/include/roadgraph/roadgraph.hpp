#ifndef ROADGRAPH_ROADGRAPH_HPP
#define ROADGRAPH_ROADGRAPH_HPP

// Umbrella header.

#include "roadgraph/apls.hpp"
#include "roadgraph/clean.hpp"
#include "roadgraph/config.hpp"
#include "roadgraph/errors.hpp"
#include "roadgraph/fixtures.hpp"
#include "roadgraph/geo.hpp"
#include "roadgraph/geojson.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/loss.hpp"
#include "roadgraph/pipeline.hpp"
#include "roadgraph/raster.hpp"
#include "roadgraph/raster_io.hpp"
#include "roadgraph/rasterize.hpp"
#include "roadgraph/refine.hpp"
#include "roadgraph/rng.hpp"
#include "roadgraph/routing.hpp"
#include "roadgraph/skeleton_graph.hpp"
#include "roadgraph/skeletonize.hpp"
#include "roadgraph/snap.hpp"
#include "roadgraph/tiling.hpp"
#include "roadgraph/topo.hpp"
#include "roadgraph/vector_roads.hpp"

#endif
