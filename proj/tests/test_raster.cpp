#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "roadgraph/clean.hpp"
#include "roadgraph/geo.hpp"
#include "roadgraph/loss.hpp"
#include "roadgraph/raster.hpp"
#include "roadgraph/raster_io.hpp"
#include "roadgraph/rasterize.hpp"
#include "roadgraph/rng.hpp"

using namespace roadgraph;

namespace {

RasterGrid random_binary(int w, int h, double density, std::uint64_t seed) {
    RasterGrid g(w, h, RasterKind::binary);
    Xorshift64Star rng(seed);
    for (auto& v : g.values) v = rng.next_double() < density ? 1.0f : 0.0f;
    return g;
}

RasterGrid random_probability(int w, int h, std::uint64_t seed) {
    RasterGrid g(w, h, RasterKind::probability);
    Xorshift64Star rng(seed);
    for (auto& v : g.values) v = static_cast<float>(rng.next_double());
    return g;
}

// Reference erosion/dilation straight from the definition.
RasterGrid oracle_morph(const RasterGrid& in, MorphOp op, int radius) {
    auto offs = disk_offsets(radius);
    auto erode1 = [&](const RasterGrid& g) {
        RasterGrid out(g.width, g.height, RasterKind::binary, g.transform);
        for (int r = 0; r < g.height; ++r)
            for (int c = 0; c < g.width; ++c) {
                bool all = g.at(r, c) != 0.0f;
                for (auto [dr, dc] : offs)
                    if (all && (!g.in_bounds(r + dr, c + dc) || g.at(r + dr, c + dc) == 0.0f))
                        all = false;
                out.at(r, c) = all ? 1.0f : 0.0f;
            }
        return out;
    };
    auto dilate1 = [&](const RasterGrid& g) {
        RasterGrid out(g.width, g.height, RasterKind::binary, g.transform);
        for (int r = 0; r < g.height; ++r)
            for (int c = 0; c < g.width; ++c)
                for (auto [dr, dc] : offs)
                    if (g.in_bounds(r + dr, c + dc) && g.at(r + dr, c + dc) != 0.0f)
                        out.at(r, c) = 1.0f;
        return out;
    };
    return op == MorphOp::open ? dilate1(erode1(in)) : erode1(dilate1(in));
}

} // namespace

TEST_CASE("geo transform applies and inverts") {
    GeoTransform t = GeoTransform::north_up(0.3, 1000.0, 2000.0);
    REQUIRE(t.pixel_size_m() == Catch::Approx(0.3));
    GeoPoint g = t.apply(10.0, 20.0);
    REQUIRE(g.x == Catch::Approx(1003.0));
    REQUIRE(g.y == Catch::Approx(1994.0));
    PixelCoord p = t.inverse(g);
    REQUIRE(p.col == Catch::Approx(10.0).margin(1e-12));
    REQUIRE(p.row == Catch::Approx(20.0).margin(1e-12));

    GeoTransform bad{1.0, 2.0, 0.0, 2.0, 4.0, 0.0}; // det 0
    REQUIRE_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("world file round trip") {
    GeoTransform t{0.3, 0.0, 12345.678, 0.0, -0.3, 98765.432};
    GeoTransform back = parse_world_file_string(write_world_file_string(t));
    REQUIRE(back == t);
    // line order is a, d, b, e, c, f
    std::istringstream lines(write_world_file_string(t));
    double l1 = 0, l2 = 99, l3 = 99, l4 = 0, l5 = 0, l6 = 0;
    lines >> l1 >> l2 >> l3 >> l4 >> l5 >> l6;
    REQUIRE(l1 == 0.3);
    REQUIRE(l2 == 0.0);
    REQUIRE(l3 == 0.0);
    REQUIRE(l4 == -0.3);
    REQUIRE(l5 == 12345.678);
    REQUIRE(l6 == 98765.432);
    REQUIRE_THROWS_AS(parse_world_file_string("1 2 3"), parse_error);
}

TEST_CASE("pgm round trip") {
    RasterGrid g = random_binary(13, 7, 0.4, 1);
    g.transform = GeoTransform::north_up(0.3, 5.0, 9.0);
    RasterGrid back = parse_pgm_string(write_pgm_string(g), RasterKind::binary, g.transform);
    REQUIRE(back.values == g.values);
    REQUIRE(back.width == g.width);
    REQUIRE(back.height == g.height);

    RasterGrid prob = random_probability(9, 5, 2);
    RasterGrid round =
        parse_pgm_string(write_pgm_string(prob), RasterKind::probability, prob.transform);
    for (std::size_t i = 0; i < prob.size(); ++i)
        REQUIRE(std::fabs(round.values[i] - prob.values[i]) <= 0.5f / 255.0f + 1e-6f);

    REQUIRE_THROWS_AS(parse_pgm_string("P6 1 1 255 x", RasterKind::binary), parse_error);
}

TEST_CASE("rgf1 round trip is exact") {
    RasterGrid g = random_probability(17, 3, 3);
    RasterGrid back = parse_rgf_string(write_rgf_string(g));
    REQUIRE(back.values == g.values);
    const std::string bytes = write_rgf_string(g);
    REQUIRE(bytes.substr(0, 4) == "RGF1");
    REQUIRE(bytes.size() == 12 + g.size() * 4);
    REQUIRE_THROWS_AS(parse_rgf_string(bytes.substr(0, 10)), parse_error);
}

TEST_CASE("rasterize: empty set gives empty mask") {
    VectorRoadSet roads;
    RasterGrid m = rasterize_centerlines(roads, 32, 32, GeoTransform::north_up(0.3, 0, 0));
    for (float v : m.values) REQUIRE(v == 0.0f);
}

TEST_CASE("rasterize: horizontal segment matches brute-force distance oracle") {
    const GeoTransform t = GeoTransform::north_up(0.3, 100.0, 100.0);
    VectorRoadSet roads;
    roads.lines.push_back({{101.0, 95.2}, {108.0, 95.2}});
    roads.attributes.emplace_back();
    const double hw = 2.0;
    RasterGrid m = rasterize_centerlines(roads, 64, 64, t, hw);

    int band_rows = 0;
    bool col_mid_has = false;
    for (int r = 0; r < 64; ++r) {
        for (int c = 0; c < 64; ++c) {
            const GeoPoint g = t.apply(c, r);
            const double d2 =
                segment_distance_sq(g, roads.lines[0][0], roads.lines[0][1]);
            const bool expected = d2 <= hw * hw;
            INFO("pixel (" << r << "," << c << ")");
            REQUIRE((m.at(r, c) != 0.0f) == expected);
        }
    }
    // band is about 2*hw / 0.3 = 13 px tall in the segment interior
    for (int r = 0; r < 64; ++r)
        if (m.at(r, 15) != 0.0f) ++band_rows, col_mid_has = true;
    REQUIRE(col_mid_has);
    REQUIRE(band_rows >= 13);
    REQUIRE(band_rows <= 14);
}

TEST_CASE("threshold boundaries and oracle") {
    RasterGrid half(8, 8, RasterKind::probability);
    for (auto& v : half.values) v = 0.5f;
    RasterGrid a = threshold(half, 0.5);
    for (float v : a.values) REQUIRE(v == 1.0f);
    RasterGrid b = threshold(half, 0.51);
    for (float v : b.values) REQUIRE(v == 0.0f);

    RasterGrid r = random_probability(21, 17, 7);
    const double t = 0.37;
    RasterGrid out = threshold(r, t);
    for (std::size_t i = 0; i < r.size(); ++i)
        REQUIRE(out.values[i] == (r.values[i] >= t ? 1.0f : 0.0f));

    REQUIRE_THROWS_AS(threshold(half, 1.5), parameter_error);
    REQUIRE(threshold(half, 0.2).transform == half.transform);
}

TEST_CASE("morph borders, speckle, gap fill and oracle equality") {
    // all-ones grid: open erodes the border ring per the background rule
    RasterGrid ones(9, 9, RasterKind::binary, GeoTransform::identity(), 1.0f);
    RasterGrid opened = morph(ones, MorphOp::open, 1);
    RasterGrid oracle = oracle_morph(ones, MorphOp::open, 1);
    REQUIRE(opened.values == oracle.values);
    REQUIRE(opened.at(4, 4) == 1.0f);

    // isolated pixel is removed by opening
    RasterGrid dot(7, 7, RasterKind::binary);
    dot.at(3, 3) = 1.0f;
    RasterGrid cleaned = morph(dot, MorphOp::open, 1);
    for (float v : cleaned.values) REQUIRE(v == 0.0f);

    // 1-px gap in a 5-px-wide bar is closed at radius 2
    RasterGrid bar(32, 32, RasterKind::binary);
    for (int r = 10; r < 15; ++r)
        for (int c = 2; c < 30; ++c)
            if (c != 16) bar.at(r, c) = 1.0f;
    RasterGrid closed = morph(bar, MorphOp::close, 2);
    REQUIRE(closed.values == oracle_morph(bar, MorphOp::close, 2).values);
    for (int r = 11; r < 14; ++r) REQUIRE(closed.at(r, 16) == 1.0f);

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        RasterGrid g = random_binary(24, 18, 0.45, 100 + seed);
        for (int radius : {1, 2}) {
            REQUIRE(morph(g, MorphOp::open, radius).values ==
                    oracle_morph(g, MorphOp::open, radius).values);
            REQUIRE(morph(g, MorphOp::close, radius).values ==
                    oracle_morph(g, MorphOp::close, radius).values);
        }
    }

    RasterGrid prob = random_probability(4, 4, 5);
    REQUIRE_THROWS_AS(morph(prob, MorphOp::open, 1), type_error);
}

TEST_CASE("morph open and close are idempotent") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        RasterGrid g = random_binary(20, 20, 0.5, 300 + seed);
        for (int radius : {1, 2, 3}) {
            RasterGrid o1 = morph(g, MorphOp::open, radius);
            REQUIRE(morph(o1, MorphOp::open, radius).values == o1.values);
            RasterGrid c1 = morph(g, MorphOp::close, radius);
            REQUIRE(morph(c1, MorphOp::close, radius).values == c1.values);
        }
    }
}

TEST_CASE("smooth median filter") {
    RasterGrid zero(10, 10, RasterKind::binary);
    RasterGrid s = smooth(zero, 1);
    for (float v : s.values) REQUIRE(v == 0.0f);

    RasterGrid dot(9, 9, RasterKind::binary);
    dot.at(4, 4) = 1.0f;
    RasterGrid sd = smooth(dot, 1);
    for (float v : sd.values) REQUIRE(v == 0.0f);

    // checkerboard vs per-pixel median oracle (ties resolve to 1)
    RasterGrid cb(8, 8, RasterKind::binary);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) cb.at(r, c) = (r + c) % 2 ? 1.0f : 0.0f;
    RasterGrid sc = smooth(cb, 1);
    auto offs = disk_offsets(1);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            int count = 0, ones = 0;
            for (auto [dr, dc] : offs) {
                if (!cb.in_bounds(r + dr, c + dc)) continue;
                ++count;
                ones += cb.at(r + dr, c + dc) != 0.0f;
            }
            REQUIRE(sc.at(r, c) == (2 * ones >= count ? 1.0f : 0.0f));
        }
}

TEST_CASE("combined loss: perfect prediction and closed form") {
    RasterGrid target(10, 10, RasterKind::binary);
    for (int i = 0; i < 50; ++i) target.values[static_cast<std::size_t>(i)] = 1.0f;
    RasterGrid pred(10, 10, RasterKind::probability);
    for (std::size_t i = 0; i < pred.size(); ++i) pred.values[i] = target.values[i];
    REQUIRE(combined_loss(pred, target) == Catch::Approx(0.0).margin(1e-5));

    RasterGrid half(10, 10, RasterKind::probability);
    for (auto& v : half.values) v = 0.5f;
    const double expected = 0.8 * std::log(2.0) + 0.2 * 0.5; // BCE=ln2, Dice=0.5
    REQUIRE(std::fabs(combined_loss(half, target) - expected) < 1e-6);

    RasterGrid other(9, 9, RasterKind::binary);
    REQUIRE_THROWS_AS(combined_loss(pred, other), dimension_error);
}

TEST_CASE("combined loss decreases as prediction approaches target") {
    RasterGrid target(6, 6, RasterKind::binary);
    Xorshift64Star rng(11);
    for (auto& v : target.values) v = rng.next_double() < 0.5 ? 1.0f : 0.0f;
    RasterGrid pred(6, 6, RasterKind::probability);
    for (auto& v : pred.values) v = static_cast<float>(rng.next_double());
    const double base = combined_loss(pred, target);
    REQUIRE(base >= 0.0);
    for (std::size_t i = 0; i < pred.size(); i += 5) {
        RasterGrid moved = pred;
        // move one value halfway toward its target
        moved.values[i] = 0.5f * (moved.values[i] + target.values[i]);
        if (moved.values[i] == pred.values[i]) continue;
        REQUIRE(combined_loss(moved, target) < base);
    }
}

TEST_CASE("clean pipeline preserves the transform") {
    RasterGrid g = random_probability(40, 30, 21);
    g.transform = GeoTransform::north_up(0.3, 77.0, 88.0);
    RasterGrid c = clean_mask(g, CleanParams{});
    REQUIRE(c.transform == g.transform);
    REQUIRE(c.kind == RasterKind::binary);
}
