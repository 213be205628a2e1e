#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "roadgraph/graph.hpp"
#include "roadgraph/rasterize.hpp"
#include "roadgraph/refine.hpp"
#include "roadgraph/rng.hpp"
#include "roadgraph/skeleton_graph.hpp"
#include "roadgraph/skeletonize.hpp"

using namespace roadgraph;

namespace {

RasterGrid grid_from_strings(const std::vector<std::string>& rows) {
    RasterGrid g(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()),
                 RasterKind::binary);
    for (int r = 0; r < g.height; ++r)
        for (int c = 0; c < g.width; ++c)
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '#')
                g.at(r, c) = 1.0f;
    return g;
}

std::multiset<int> degree_multiset(const RoadNetwork& g) {
    std::multiset<int> out;
    for (const auto& [id, d] : g.degrees()) out.insert(d);
    return out;
}

/// Test graph builder: nodes at pixel positions with a north-up transform.
RoadNetwork build_graph(const std::vector<std::pair<double, double>>& pts,
                        const std::vector<std::pair<int, int>>& edges,
                        double pixel_size = 1.0) {
    RoadNetwork g;
    g.transform = GeoTransform::north_up(pixel_size, 0.0, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Node n;
        n.id = static_cast<NodeId>(i);
        n.pixel = {pts[i].first, pts[i].second};
        n.geo = g.transform.apply(n.pixel);
        g.add_node(std::move(n));
    }
    for (auto [u, v] : edges) g.add_straight_edge(u, v);
    return g;
}

} // namespace

TEST_CASE("straight line extracts as one edge") {
    RasterGrid line(60, 9, RasterKind::binary);
    for (int c = 5; c < 55; ++c) line.at(4, c) = 1.0f;
    RoadNetwork g = skeleton_to_graph(line, GeoTransform::north_up(0.5, 0.0, 0.0));
    REQUIRE(g.nodes.size() == 2);
    REQUIRE(g.edges.size() == 1);
    REQUIRE(g.edges[0].length_px == Catch::Approx(49.0));
    REQUIRE(g.edges[0].length_m == Catch::Approx(49.0 * 0.5));
    REQUIRE(g.edges[0].path.size() == 50);
    g.validate();
}

TEST_CASE("plus sign skeleton gives 5 nodes and 4 edges") {
    std::vector<std::string> art = {
        ".....#.....",
        ".....#.....",
        ".....#.....",
        ".....#.....",
        ".....#.....",
        "###########",
        ".....#.....",
        ".....#.....",
        ".....#.....",
        ".....#.....",
        ".....#.....",
    };
    RoadNetwork g = skeleton_to_graph(grid_from_strings(art), GeoTransform::identity());
    REQUIRE(g.nodes.size() == 5);
    REQUIRE(g.edges.size() == 4);
    auto deg = degree_multiset(g);
    REQUIRE(deg == std::multiset<int>({1, 1, 1, 1, 4}));
    g.validate();
}

TEST_CASE("one pixel ring becomes a single self loop") {
    std::vector<std::string> art = {
        "........",
        "..####..",
        ".#....#.",
        ".#....#.",
        "..####..",
        "........",
    };
    RasterGrid ring = grid_from_strings(art);
    RoadNetwork g = skeleton_to_graph(ring, GeoTransform::identity());
    REQUIRE(g.nodes.size() == 1);
    REQUIRE(g.edges.size() == 1);
    REQUIRE(g.edges[0].u == g.edges[0].v);
    // circumference: closed path over every ring pixel
    int ring_pixels = 0;
    for (float v : ring.values) ring_pixels += v != 0.0f;
    REQUIRE(g.edges[0].path.size() == static_cast<std::size_t>(ring_pixels) + 1);
    REQUIRE(g.edges[0].path.front() == g.edges[0].path.back());
    // cycle-tracing oracle: length equals the sum of steps around the loop
    REQUIRE(g.edges[0].length_px == Catch::Approx(path_length_px(g.edges[0].path)));
    g.validate();
}

TEST_CASE("non-thin input is rejected with the offending pixel") {
    RasterGrid bad(8, 8, RasterKind::binary);
    bad.at(3, 4) = bad.at(3, 5) = bad.at(4, 4) = bad.at(4, 5) = 1.0f;
    try {
        skeleton_to_graph(bad, GeoTransform::identity());
        FAIL("expected precondition_error");
    } catch (const precondition_error& e) {
        REQUIRE(std::string(e.what()).find("row=3") != std::string::npos);
        REQUIRE(std::string(e.what()).find("col=4") != std::string::npos);
    }
}

TEST_CASE("extraction is lossless over skeleton pixels") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RasterGrid mask(48, 48, RasterKind::binary);
        Xorshift64Star rng(900 + seed);
        for (int b = 0; b < 6; ++b) {
            const int r0 = static_cast<int>(rng.next_below(44));
            const int c0 = static_cast<int>(rng.next_below(44));
            const int rr = 2 + static_cast<int>(rng.next_below(10));
            const int cc = 2 + static_cast<int>(rng.next_below(10));
            for (int r = r0; r < std::min(48, r0 + rr); ++r)
                for (int c = c0; c < std::min(48, c0 + cc); ++c) mask.at(r, c) = 1.0f;
        }
        RasterGrid skel = skeletonize(mask);
        RoadNetwork g = skeleton_to_graph(skel, GeoTransform::identity());
        g.validate();

        std::set<std::pair<int, int>> covered;
        for (const Edge& e : g.edges)
            for (const PixelCoord& p : e.path)
                covered.insert({static_cast<int>(p.row), static_cast<int>(p.col)});
        for (const auto& [id, n] : g.nodes)
            for (const auto& px : n.cluster) covered.insert(px);

        std::set<std::pair<int, int>> fg;
        for (int r = 0; r < 48; ++r)
            for (int c = 0; c < 48; ++c)
                if (skel.at(r, c) != 0.0f) fg.insert({r, c});
        INFO("seed " << seed);
        REQUIRE(covered == fg);
    }
}

TEST_CASE("round trip: re-rasterized graph re-extracts with the same degrees") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RasterGrid mask(96, 96, RasterKind::binary);
        Xorshift64Star rng(7000 + seed);
        for (int b = 0; b < 5; ++b) {
            const int r0 = 4 + static_cast<int>(rng.next_below(70));
            const int c0 = 4 + static_cast<int>(rng.next_below(70));
            const int rr = 6 + static_cast<int>(rng.next_below(18));
            const int cc = 6 + static_cast<int>(rng.next_below(18));
            for (int r = r0; r < std::min(92, r0 + rr); ++r)
                for (int c = c0; c < std::min(92, c0 + cc); ++c) mask.at(r, c) = 1.0f;
        }
        const GeoTransform t = GeoTransform::north_up(1.0, 0.0, 0.0);
        mask.transform = t;
        RasterGrid skel = skeletonize(mask);
        RoadNetwork g = skeleton_to_graph(skel, t);

        VectorRoadSet as_roads;
        for (const Edge& e : g.edges) {
            if (e.geo_path.size() < 2) continue;
            as_roads.lines.push_back(e.geo_path);
            as_roads.attributes.emplace_back();
        }
        if (as_roads.lines.empty()) continue;
        RasterGrid redrawn =
            rasterize_centerlines(as_roads, 96, 96, t, t.pixel_size_m() / 2.0);
        RasterGrid reskel = skeletonize(redrawn);
        RoadNetwork g2 = skeleton_to_graph(reskel, t);
        INFO("seed " << seed);
        REQUIRE(degree_multiset(g) == degree_multiset(g2));
    }
}

TEST_CASE("remove small subgraphs honors the strict threshold") {
    // component A: single 50 m edge; component B: chain of 120 m
    RoadNetwork g = build_graph({{0, 0}, {0, 50}, {40, 0}, {40, 60}, {40, 120}},
                                {{0, 1}, {2, 3}, {3, 4}});
    RoadNetwork out = remove_small_subgraphs(g, 80.0);
    REQUIRE(out.nodes.size() == 3);
    REQUIRE(out.edges.size() == 2);
    REQUIRE(out.nodes.count(0) == 0);
    REQUIRE(out.nodes.count(2) == 1);

    // exactly 80 m total is retained (strict less-than)
    RoadNetwork h = build_graph({{0, 0}, {0, 80}}, {{0, 1}});
    REQUIRE(remove_small_subgraphs(h, 80.0).nodes.size() == 2);
    // 50 m alone is deleted
    RoadNetwork f = build_graph({{0, 0}, {0, 50}}, {{0, 1}});
    REQUIRE(remove_small_subgraphs(f, 80.0).nodes.empty());
    // survivors are untouched
    REQUIRE(out.edges[0].path == g.edges[1].path);
}

TEST_CASE("prune short spurs honors the strict threshold and iterates") {
    // junction with a long bar and an 8 px spur
    RoadNetwork g = build_graph({{0, 0}, {0, 30}, {0, 60}, {8, 30}},
                                {{0, 1}, {1, 2}, {1, 3}});
    RoadNetwork out = prune_short_spurs(g, 10.0);
    REQUIRE(out.nodes.count(3) == 0);
    REQUIRE(out.edges.size() == 2);

    // exactly 10 px spur is retained
    RoadNetwork h = build_graph({{0, 0}, {0, 30}, {0, 60}, {10, 30}},
                                {{0, 1}, {1, 2}, {1, 3}});
    REQUIRE(prune_short_spurs(h, 10.0).nodes.count(3) == 1);

    // chain of two 6 px spur edges disappears by iteration
    RoadNetwork c = build_graph({{0, 0}, {0, 30}, {0, 60}, {6, 30}, {12, 30}},
                                {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
    RoadNetwork pruned = prune_short_spurs(c, 10.0);
    REQUIRE(pruned.nodes.count(3) == 0);
    REQUIRE(pruned.nodes.count(4) == 0);
    REQUIRE(pruned.edges.size() == 2);
}

TEST_CASE("connect terminals: strict threshold, dedup and tie rules") {
    // terminal 15 px from an unconnected node -> edge added
    RoadNetwork g = build_graph({{0, 0}, {0, 30}, {0, 45}, {0, 75}},
                                {{0, 1}, {2, 3}});
    RoadNetwork out = connect_terminals(g, 20.0);
    REQUIRE(out.edges.size() == 3);

    // exactly 20 px -> nothing
    RoadNetwork h = build_graph({{0, 0}, {0, 30}, {0, 50}, {0, 80}},
                                {{0, 1}, {2, 3}});
    REQUIRE(connect_terminals(h, 20.0).edges.size() == 2);

    // two mutual terminals 10 px apart -> exactly one edge
    RoadNetwork m = build_graph({{0, 0}, {0, 30}, {0, 40}, {0, 70}},
                                {{0, 1}, {2, 3}});
    RoadNetwork bridged = connect_terminals(m, 20.0);
    REQUIRE(bridged.edges.size() == 3);
    int bridge_count = 0;
    for (const Edge& e : bridged.edges)
        if ((e.u == 1 && e.v == 2) || (e.u == 2 && e.v == 1)) ++bridge_count;
    REQUIRE(bridge_count == 1);
}

TEST_CASE("refine composes the three rules") {
    REQUIRE(refine(RoadNetwork{}, RefineParams{}).nodes.empty());

    // an 8 px spur, a 15 px gap, and a 50 m orphan together
    RoadNetwork g = build_graph(
        {
            {0, 0},    // 0: bar end
            {0, 100},  // 1: junction
            {0, 200},  // 2: bar end (other side)
            {8, 100},  // 3: short spur tip
            {15, 200}, // 4: dangling fragment start (15 px gap to node 2)
            {15, 300}, // 5: fragment end
            {500, 0},  // 6: orphan start
            {500, 50}, // 7: orphan end (50 m component)
        },
        {{0, 1}, {1, 2}, {1, 3}, {4, 5}, {6, 7}});
    RefineParams params; // 80 m / 10 px / 20 px
    RoadNetwork out = refine(g, params);
    REQUIRE(out.nodes.count(3) == 0);          // spur pruned
    REQUIRE(out.nodes.count(6) == 0);          // orphan dropped
    REQUIRE(out.nodes.count(4) == 1);          // fragment bridged in
    bool has_bridge = false;
    for (const Edge& e : out.edges)
        if ((e.u == 2 && e.v == 4) || (e.u == 4 && e.v == 2)) has_bridge = true;
    REQUIRE(has_bridge);

    RefineParams defaults;
    REQUIRE(defaults.min_subgraph_m == 80.0);
    REQUIRE(defaults.max_spur_px == 10.0);
    REQUIRE(defaults.max_gap_px == 20.0);
}

TEST_CASE("refine is deterministic") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        RasterGrid mask(64, 64, RasterKind::binary);
        Xorshift64Star rng(40 + seed);
        for (int b = 0; b < 7; ++b) {
            const int r0 = static_cast<int>(rng.next_below(56));
            const int c0 = static_cast<int>(rng.next_below(56));
            for (int r = r0; r < std::min(64, r0 + 8); ++r)
                for (int c = c0; c < std::min(64, c0 + 8); ++c) mask.at(r, c) = 1.0f;
        }
        RoadNetwork g = skeleton_to_graph(skeletonize(mask), GeoTransform::identity());
        RoadNetwork a = refine(g, RefineParams{20.0, 4.0, 6.0});
        RoadNetwork b = refine(g, RefineParams{20.0, 4.0, 6.0});
        REQUIRE(a.nodes.size() == b.nodes.size());
        REQUIRE(a.edges.size() == b.edges.size());
        for (std::size_t i = 0; i < a.edges.size(); ++i) {
            REQUIRE(a.edges[i].u == b.edges[i].u);
            REQUIRE(a.edges[i].v == b.edges[i].v);
            REQUIRE(a.edges[i].path == b.edges[i].path);
        }
    }
}
