#ifndef ROADGRAPH_SKELETONIZE_HPP
#define ROADGRAPH_SKELETONIZE_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "roadgraph/raster.hpp"

namespace roadgraph {

namespace detail {

// Ring positions around a pixel in the order N, NE, E, SE, S, SW, W, NW.
constexpr int kRingRow[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kRingCol[8] = {0, 1, 1, 1, 0, -1, -1, -1};

/// A pixel is deletable without changing topology iff its foreground
/// neighbors form exactly one 8-connected component within the ring and its
/// background neighbors form exactly one 4-connected component touching a
/// 4-neighbor. Precomputed over all 256 neighborhood configurations.
inline const std::array<std::uint8_t, 256>& simple_point_lut() {
    static const std::array<std::uint8_t, 256> lut = [] {
        std::array<std::uint8_t, 256> t{};
        for (int mask = 0; mask < 256; ++mask) {
            auto adjacent8 = [](int i, int j) {
                const int dr = kRingRow[i] - kRingRow[j];
                const int dc = kRingCol[i] - kRingCol[j];
                return std::abs(dr) <= 1 && std::abs(dc) <= 1;
            };
            auto adjacent4 = [](int i, int j) {
                const int dr = kRingRow[i] - kRingRow[j];
                const int dc = kRingCol[i] - kRingCol[j];
                return std::abs(dr) + std::abs(dc) == 1;
            };
            // Count components of the given bit set under an adjacency,
            // keeping only components that intersect must_touch_mask.
            auto components = [&](int bits, auto&& adj, int must_touch_mask) {
                int seen = 0, comps = 0;
                for (int i = 0; i < 8; ++i) {
                    if (!((bits >> i) & 1) || ((seen >> i) & 1)) continue;
                    int stack[8], top = 0, member_mask = 0;
                    stack[top++] = i;
                    seen |= 1 << i;
                    member_mask |= 1 << i;
                    while (top > 0) {
                        const int cur = stack[--top];
                        for (int j = 0; j < 8; ++j) {
                            if (!((bits >> j) & 1) || ((seen >> j) & 1)) continue;
                            if (adj(cur, j)) {
                                seen |= 1 << j;
                                member_mask |= 1 << j;
                                stack[top++] = j;
                            }
                        }
                    }
                    if ((member_mask & must_touch_mask) != 0) ++comps;
                }
                return comps;
            };
            const int fg = mask;
            const int bg = ~mask & 0xFF;
            // 4-neighbors are ring indices 0 (N), 2 (E), 4 (S), 6 (W).
            const int four_mask = (1 << 0) | (1 << 2) | (1 << 4) | (1 << 6);
            const int t8 = components(fg, adjacent8, 0xFF);
            const int t4 = components(bg, adjacent4, four_mask);
            t[static_cast<std::size_t>(mask)] = (t8 == 1 && t4 == 1) ? 1 : 0;
        }
        return t;
    }();
    return lut;
}

} // namespace detail

/// Locate any 2x2 all-foreground block; returns its top-left (row, col).
inline std::optional<std::pair<int, int>> find_2x2_block(const RasterGrid& g) {
    for (int r = 0; r + 1 < g.height; ++r)
        for (int c = 0; c + 1 < g.width; ++c)
            if (g.is_set(r, c) && g.is_set(r, c + 1) && g.is_set(r + 1, c) &&
                g.is_set(r + 1, c + 1))
                return std::make_pair(r, c);
    return std::nullopt;
}

/// Number of 8-connected foreground components.
inline int count_components_8(const RasterGrid& g) {
    std::vector<std::uint8_t> seen(g.size(), 0);
    std::vector<std::size_t> stack;
    int comps = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.values[i] == 0.0f || seen[i]) continue;
        ++comps;
        seen[i] = 1;
        stack.assign(1, i);
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            const int r = static_cast<int>(cur) / g.width;
            const int c = static_cast<int>(cur) % g.width;
            for (int k = 0; k < 8; ++k) {
                const int rr = r + detail::kRingRow[k], cc = c + detail::kRingCol[k];
                if (!g.in_bounds(rr, cc)) continue;
                const std::size_t j = g.index(rr, cc);
                if (g.values[j] != 0.0f && !seen[j]) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
            }
        }
    }
    return comps;
}

/// Reduce a binary mask to a one-pixel-wide skeleton by iterative thinning.
///
/// Two directional subiterations per round (north/east borders, then
/// south/west borders) delete pixels sequentially in raster order. A pixel is
/// deleted only when it has at least two foreground neighbors (endpoints
/// survive) and its removal provably keeps both the foreground 8-components
/// and the background 4-components intact, so the component count never
/// changes. A final sweep clears any 2x2 block the directional gate left
/// behind; the whole procedure runs to a fixed point.
inline RasterGrid skeletonize(const RasterGrid& binary) {
    require_binary(binary, "skeletonize");
    const int W = binary.width, H = binary.height;
    const int PW = W + 2;
    std::vector<std::uint8_t> img(static_cast<std::size_t>(PW) * (H + 2), 0);
    auto pidx = [PW](int r, int c) {
        return static_cast<std::size_t>(r + 1) * PW + (c + 1);
    };
    std::vector<std::uint32_t> fg;
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c)
            if (binary.at(r, c) != 0.0f) {
                img[pidx(r, c)] = 1;
                fg.push_back(static_cast<std::uint32_t>(pidx(r, c)));
            }

    // Neighbor offsets in padded coordinates, same order as the ring tables.
    const int noff[8] = {-PW, -PW + 1, 1, PW + 1, PW, PW - 1, -1, -PW - 1};
    const auto& simple = detail::simple_point_lut();

    auto neighbor_mask = [&](std::uint32_t p) {
        int m = 0;
        for (int k = 0; k < 8; ++k)
            if (img[p + noff[k]]) m |= 1 << k;
        return m;
    };

    std::vector<std::uint32_t> candidates;
    // Ring bit of the background 4-neighbor defining each subiteration's
    // border: north, south, east, west.
    constexpr int kPassBit[4] = {0, 4, 2, 6};
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 4; ++pass) {
            // Mark this subiteration's directional border on a snapshot so
            // one pass peels at most one pixel layer; deletions are then
            // applied sequentially with topology checks against the current
            // image.
            candidates.clear();
            for (const std::uint32_t p : fg)
                if (!(neighbor_mask(p) & (1 << kPassBit[pass]))) candidates.push_back(p);
            bool deleted = false;
            for (const std::uint32_t p : candidates) {
                const int m = neighbor_mask(p);
                if (std::popcount(static_cast<unsigned>(m)) >= 2 && simple[m]) {
                    img[p] = 0;
                    deleted = true;
                    changed = true;
                }
            }
            if (deleted)
                std::erase_if(fg, [&](std::uint32_t p) { return img[p] == 0; });
        }
        if (!changed) {
            // Directional gating can strand a 2x2 block whose members are
            // all interior to it; break such blocks wherever a member is
            // still topologically deletable, then rethin.
            std::size_t kept = 0;
            for (std::size_t i = 0; i < fg.size(); ++i) {
                const std::uint32_t p = fg[i];
                const bool in_block =
                    (img[p + 1] && img[p + PW] && img[p + PW + 1]) ||
                    (img[p - 1] && img[p + PW] && img[p + PW - 1]) ||
                    (img[p + 1] && img[p - PW] && img[p - PW + 1]) ||
                    (img[p - 1] && img[p - PW] && img[p - PW - 1]);
                const int m = neighbor_mask(p);
                if (in_block && std::popcount(static_cast<unsigned>(m)) >= 2 && simple[m]) {
                    img[p] = 0;
                    changed = true;
                } else {
                    fg[kept++] = p;
                }
            }
            fg.resize(kept);
        }
    }

    RasterGrid out(W, H, RasterKind::binary, binary.transform);
    for (std::uint32_t p : fg) {
        const int r = static_cast<int>(p) / PW - 1;
        const int c = static_cast<int>(p) % PW - 1;
        out.at(r, c) = 1.0f;
    }
    return out;
}

} // namespace roadgraph

#endif
