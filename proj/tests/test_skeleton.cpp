#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "roadgraph/raster.hpp"
#include "roadgraph/rng.hpp"
#include "roadgraph/skeletonize.hpp"

using namespace roadgraph;

namespace {

// Random blobby masks: unions of disks and boxes over light noise.
RasterGrid random_blob_mask(int w, int h, std::uint64_t seed) {
    RasterGrid g(w, h, RasterKind::binary);
    Xorshift64Star rng(seed);
    const int n_disks = 2 + static_cast<int>(rng.next_below(4));
    for (int d = 0; d < n_disks; ++d) {
        const double cr = rng.next_double(0.0, h);
        const double cc = rng.next_double(0.0, w);
        const double rad = rng.next_double(2.0, 10.0);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if ((r - cr) * (r - cr) + (c - cc) * (c - cc) <= rad * rad)
                    g.at(r, c) = 1.0f;
    }
    const int n_bars = 1 + static_cast<int>(rng.next_below(3));
    for (int b = 0; b < n_bars; ++b) {
        const int r0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(h)));
        const int c0 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(w)));
        const int len = 8 + static_cast<int>(rng.next_below(24));
        const int thick = 2 + static_cast<int>(rng.next_below(4));
        const bool horiz = rng.next_below(2) == 0;
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < thick; ++j) {
                const int r = horiz ? r0 + j : r0 + i;
                const int c = horiz ? c0 + i : c0 + j;
                if (g.in_bounds(r, c)) g.at(r, c) = 1.0f;
            }
    }
    for (int i = 0; i < 30; ++i) {
        const int r = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(h)));
        const int c = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(w)));
        g.at(r, c) = 1.0f;
    }
    return g;
}

} // namespace

TEST_CASE("five pixel bar thins to a one pixel centerline") {
    RasterGrid bar(60, 20, RasterKind::binary);
    for (int r = 7; r < 12; ++r)
        for (int c = 3; c < 53; ++c) bar.at(r, c) = 1.0f;
    RasterGrid skel = skeletonize(bar);
    REQUIRE(count_components_8(skel) == 1);
    REQUIRE(!find_2x2_block(skel).has_value());
    // centered: surviving pixels lie on the middle row
    int on = 0;
    for (int c = 0; c < 60; ++c)
        if (skel.at(9, c) != 0.0f) ++on;
    int total = 0;
    for (float v : skel.values) total += v != 0.0f;
    REQUIRE(on == total);
    REQUIRE(on >= 40);
}

TEST_CASE("single pixel survives thinning") {
    RasterGrid dot(9, 9, RasterKind::binary);
    dot.at(4, 4) = 1.0f;
    RasterGrid skel = skeletonize(dot);
    REQUIRE(skel.at(4, 4) == 1.0f);
    REQUIRE(count_components_8(skel) == 1);
}

TEST_CASE("plus blob thins to a cross with one junction cluster") {
    RasterGrid plus(41, 41, RasterKind::binary);
    for (int r = 18; r < 23; ++r)
        for (int c = 4; c < 37; ++c) plus.at(r, c) = 1.0f;
    for (int c = 18; c < 23; ++c)
        for (int r = 4; r < 37; ++r) plus.at(r, c) = 1.0f;
    RasterGrid skel = skeletonize(plus);
    REQUIRE(count_components_8(skel) == 1);
    REQUIRE(!find_2x2_block(skel).has_value());

    // neighbor-count census: exactly 4 endpoints, and the >=3-neighbor
    // pixels form one 8-connected cluster
    auto ncount = [&](int r, int c) {
        int n = 0;
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                if (skel.in_bounds(r + dr, c + dc) && skel.at(r + dr, c + dc) != 0.0f) ++n;
            }
        return n;
    };
    int endpoints = 0;
    RasterGrid junctions(41, 41, RasterKind::binary);
    for (int r = 0; r < 41; ++r)
        for (int c = 0; c < 41; ++c) {
            if (skel.at(r, c) == 0.0f) continue;
            const int n = ncount(r, c);
            if (n == 1) ++endpoints;
            if (n >= 3) junctions.at(r, c) = 1.0f;
        }
    REQUIRE(endpoints == 4);
    REQUIRE(count_components_8(junctions) == 1);
}

TEST_CASE("empty input stays empty") {
    RasterGrid empty(16, 16, RasterKind::binary);
    RasterGrid skel = skeletonize(empty);
    for (float v : skel.values) REQUIRE(v == 0.0f);
}

TEST_CASE("skeleton preserves a ring with its hole") {
    RasterGrid ring(40, 40, RasterKind::binary);
    for (int r = 0; r < 40; ++r)
        for (int c = 0; c < 40; ++c) {
            const double d = std::hypot(r - 20.0, c - 20.0);
            if (d >= 8.0 && d <= 14.0) ring.at(r, c) = 1.0f;
        }
    RasterGrid skel = skeletonize(ring);
    REQUIRE(count_components_8(skel) == 1);
    // the hole must survive: 4-connected background still splits into the
    // outside plus one enclosed region
    auto background_components_4 = [](const RasterGrid& g) {
        std::vector<char> seen(g.size(), 0);
        std::vector<std::size_t> stack;
        int comps = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g.values[i] != 0.0f || seen[i]) continue;
            ++comps;
            seen[i] = 1;
            stack.assign(1, i);
            while (!stack.empty()) {
                const std::size_t cur = stack.back();
                stack.pop_back();
                const int r = static_cast<int>(cur) / g.width;
                const int c = static_cast<int>(cur) % g.width;
                const int dr[4] = {-1, 1, 0, 0};
                const int dc[4] = {0, 0, -1, 1};
                for (int k = 0; k < 4; ++k) {
                    if (!g.in_bounds(r + dr[k], c + dc[k])) continue;
                    const std::size_t j = g.index(r + dr[k], c + dc[k]);
                    if (g.values[j] == 0.0f && !seen[j]) {
                        seen[j] = 1;
                        stack.push_back(j);
                    }
                }
            }
        }
        return comps;
    };
    REQUIRE(background_components_4(ring) == 2);
    REQUIRE(background_components_4(skel) == 2);
}

TEST_CASE("skeleton invariants hold on random blob masks") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        RasterGrid mask = random_blob_mask(64, 64, seed);
        RasterGrid skel = skeletonize(mask);
        INFO("seed " << seed);
        REQUIRE(count_components_8(skel) == count_components_8(mask));
        REQUIRE(!find_2x2_block(skel).has_value());
        // fixed point: a second pass changes nothing
        REQUIRE(skeletonize(skel).values == skel.values);
        // skeleton is a subset of the mask
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (skel.values[i] != 0.0f) REQUIRE(mask.values[i] != 0.0f);
    }
}

TEST_CASE("skeletonize preserves the geo transform") {
    RasterGrid mask = random_blob_mask(32, 32, 5);
    mask.transform = GeoTransform::north_up(0.3, 10.0, 20.0);
    REQUIRE(skeletonize(mask).transform == mask.transform);
}
