#ifndef ROADGRAPH_SKELETON_GRAPH_HPP
#define ROADGRAPH_SKELETON_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/graph.hpp"
#include "roadgraph/raster.hpp"
#include "roadgraph/skeletonize.hpp"

namespace roadgraph {

namespace detail {

struct SkelIndex {
    int width = 0, height = 0;
    std::vector<std::uint8_t> fg;      // 1 if skeleton pixel
    std::vector<std::uint8_t> ncount;  // 8-neighbor count for fg pixels

    std::size_t at(int r, int c) const {
        return static_cast<std::size_t>(r) * width + c;
    }
    bool set(int r, int c) const {
        return r >= 0 && r < height && c >= 0 && c < width && fg[at(r, c)] != 0;
    }
};

/// Deterministic neighbor scan order (raster order of the ring).
constexpr int kScanRow[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr int kScanCol[8] = {-1, 0, 1, -1, 1, -1, 0, 1};

} // namespace detail

/// Convert a thin skeleton into a geo-registered road graph.
///
/// Skeleton pixels with a neighbor count other than 2 become nodes —
/// endpoints (1 neighbor), junctions (>= 3, with 8-adjacent junction pixels
/// collapsed into one node at the member nearest their centroid) and isolated
/// pixels. Edges are the maximal pixel chains between nodes and carry the
/// full polyline. An isolated simple cycle yields one node at its lowest
/// (row, col) pixel and a single self-loop.
inline RoadNetwork skeleton_to_graph(const RasterGrid& skeleton, const GeoTransform& transform) {
    require_binary(skeleton, "skeleton_to_graph");
    transform.validate();
    if (auto block = find_2x2_block(skeleton))
        throw precondition_error("skeleton is not thin: 2x2 foreground block at row=" +
                                 std::to_string(block->first) +
                                 ", col=" + std::to_string(block->second));

    const int W = skeleton.width, H = skeleton.height;
    detail::SkelIndex s;
    s.width = W;
    s.height = H;
    s.fg.assign(static_cast<std::size_t>(W) * H, 0);
    s.ncount.assign(s.fg.size(), 0);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c)
            if (skeleton.at(r, c) != 0.0f) s.fg[s.at(r, c)] = 1;
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) {
            if (!s.fg[s.at(r, c)]) continue;
            int n = 0;
            for (int k = 0; k < 8; ++k)
                if (s.set(r + detail::kScanRow[k], c + detail::kScanCol[k])) ++n;
            s.ncount[s.at(r, c)] = static_cast<std::uint8_t>(n);
        }

    auto is_node_pixel = [&](int r, int c) {
        return s.fg[s.at(r, c)] && s.ncount[s.at(r, c)] != 2;
    };

    // --- Cluster node pixels -------------------------------------------
    // Junction pixels (>= 3 neighbors) merge with 8-adjacent junction
    // pixels; endpoints and isolated pixels stay singletons.
    std::vector<std::vector<std::pair<int, int>>> clusters;
    std::unordered_map<std::size_t, std::int32_t> pixel_cluster;
    {
        std::vector<std::uint8_t> seen(s.fg.size(), 0);
        for (int r = 0; r < H; ++r) {
            for (int c = 0; c < W; ++c) {
                const std::size_t i = s.at(r, c);
                if (!s.fg[i] || s.ncount[i] == 2 || seen[i]) continue;
                std::vector<std::pair<int, int>> members;
                if (s.ncount[i] >= 3) {
                    std::deque<std::pair<int, int>> queue{{r, c}};
                    seen[i] = 1;
                    while (!queue.empty()) {
                        auto [cr, cc] = queue.front();
                        queue.pop_front();
                        members.emplace_back(cr, cc);
                        for (int k = 0; k < 8; ++k) {
                            const int rr = cr + detail::kScanRow[k];
                            const int cj = cc + detail::kScanCol[k];
                            if (!s.set(rr, cj)) continue;
                            const std::size_t j = s.at(rr, cj);
                            if (s.ncount[j] >= 3 && !seen[j]) {
                                seen[j] = 1;
                                queue.emplace_back(rr, cj);
                            }
                        }
                    }
                    std::sort(members.begin(), members.end());
                } else {
                    seen[i] = 1;
                    members.emplace_back(r, c);
                }
                clusters.push_back(std::move(members));
            }
        }
    }

    // --- Isolated simple cycles ----------------------------------------
    // Chain components with no adjacent node pixel become one node with a
    // self-loop; remember them before ids are assigned.
    std::vector<std::vector<std::pair<int, int>>> cycles;
    {
        std::vector<std::uint8_t> seen(s.fg.size(), 0);
        for (int r = 0; r < H; ++r) {
            for (int c = 0; c < W; ++c) {
                const std::size_t i = s.at(r, c);
                if (!s.fg[i] || s.ncount[i] != 2 || seen[i]) continue;
                std::vector<std::pair<int, int>> comp;
                bool touches_node = false;
                std::deque<std::pair<int, int>> queue{{r, c}};
                seen[i] = 1;
                while (!queue.empty()) {
                    auto [cr, cc] = queue.front();
                    queue.pop_front();
                    comp.emplace_back(cr, cc);
                    for (int k = 0; k < 8; ++k) {
                        const int rr = cr + detail::kScanRow[k];
                        const int cj = cc + detail::kScanCol[k];
                        if (!s.set(rr, cj)) continue;
                        const std::size_t j = s.at(rr, cj);
                        if (s.ncount[j] != 2) {
                            touches_node = true;
                        } else if (!seen[j]) {
                            seen[j] = 1;
                            queue.emplace_back(rr, cj);
                        }
                    }
                }
                if (!touches_node) {
                    std::sort(comp.begin(), comp.end());
                    cycles.push_back(std::move(comp));
                }
            }
        }
    }

    // --- Representatives and node ids -----------------------------------
    struct Proto {
        std::pair<int, int> rep;
        std::vector<std::pair<int, int>> members;
        bool cycle = false;
        std::vector<std::pair<int, int>> cycle_pixels;
    };
    std::vector<Proto> protos;
    protos.reserve(clusters.size() + cycles.size());
    for (auto& members : clusters) {
        Proto p;
        if (members.size() == 1) {
            p.rep = members[0];
        } else {
            double mr = 0.0, mc = 0.0;
            for (const auto& [r, c] : members) {
                mr += r;
                mc += c;
            }
            mr /= static_cast<double>(members.size());
            mc /= static_cast<double>(members.size());
            double best = -1.0;
            for (const auto& m : members) {
                const double d2 = (m.first - mr) * (m.first - mr) +
                                  (m.second - mc) * (m.second - mc);
                if (best < 0.0 || d2 < best) {
                    best = d2;
                    p.rep = m;
                } // members sorted, so ties keep the lowest (row, col)
            }
        }
        p.members = std::move(members);
        protos.push_back(std::move(p));
    }
    for (auto& comp : cycles) {
        Proto p;
        p.rep = comp[0];
        p.members = {comp[0]};
        p.cycle = true;
        p.cycle_pixels = std::move(comp);
        protos.push_back(std::move(p));
    }
    std::sort(protos.begin(), protos.end(),
              [](const Proto& a, const Proto& b) { return a.rep < b.rep; });

    RoadNetwork g;
    g.transform = transform;
    for (std::size_t id = 0; id < protos.size(); ++id) {
        Node n;
        n.id = static_cast<NodeId>(id);
        n.pixel = {static_cast<double>(protos[id].rep.first),
                   static_cast<double>(protos[id].rep.second)};
        n.geo = transform.apply(n.pixel);
        n.cluster = protos[id].members;
        g.add_node(std::move(n));
        for (const auto& [r, c] : protos[id].members)
            pixel_cluster[s.at(r, c)] = static_cast<std::int32_t>(id);
    }

    auto make_edge = [&](NodeId u, NodeId v, std::vector<std::pair<int, int>> pix) {
        Edge e;
        e.u = u;
        e.v = v;
        e.path.reserve(pix.size());
        e.geo_path.reserve(pix.size());
        for (const auto& [r, c] : pix) {
            e.path.push_back({static_cast<double>(r), static_cast<double>(c)});
            e.geo_path.push_back(transform.apply(e.path.back()));
        }
        e.length_px = path_length_px(e.path);
        e.length_m = path_length_m(e.geo_path);
        g.edges.push_back(std::move(e));
    };

    // Shortest pixel walk from a cluster's representative to one of its
    // members, moving only across cluster pixels.
    auto intra_cluster_path = [&](const Proto& p, std::pair<int, int> to) {
        std::vector<std::pair<int, int>> path;
        if (p.rep == to || p.members.size() == 1) {
            path.push_back(p.rep);
            if (!(p.rep == to)) path.push_back(to);
            return path;
        }
        std::unordered_map<std::size_t, std::size_t> parent;
        std::deque<std::pair<int, int>> queue{p.rep};
        parent[s.at(p.rep.first, p.rep.second)] = s.at(p.rep.first, p.rep.second);
        while (!queue.empty()) {
            auto [cr, cc] = queue.front();
            queue.pop_front();
            if (std::make_pair(cr, cc) == to) break;
            for (int k = 0; k < 8; ++k) {
                const int rr = cr + detail::kScanRow[k];
                const int cj = cc + detail::kScanCol[k];
                if (rr < 0 || rr >= H || cj < 0 || cj >= W) continue;
                const std::size_t j = s.at(rr, cj);
                auto it = pixel_cluster.find(j);
                if (it == pixel_cluster.end() || parent.count(j)) continue;
                if (!std::binary_search(p.members.begin(), p.members.end(),
                                        std::make_pair(rr, cj)))
                    continue;
                parent[j] = s.at(cr, cc);
                queue.emplace_back(rr, cj);
            }
        }
        std::size_t cur = s.at(to.first, to.second);
        const std::size_t root = s.at(p.rep.first, p.rep.second);
        while (true) {
            path.emplace_back(static_cast<int>(cur) / W, static_cast<int>(cur) % W);
            if (cur == root) break;
            cur = parent.at(cur);
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    // --- Trace chains -----------------------------------------------------
    std::vector<std::uint8_t> consumed(s.fg.size(), 0);
    for (std::size_t id = 0; id < protos.size(); ++id) {
        const Proto& pu = protos[id];
        if (pu.cycle) continue;
        for (const auto& m : pu.members) {
            for (int k = 0; k < 8; ++k) {
                const int qr = m.first + detail::kScanRow[k];
                const int qc = m.second + detail::kScanCol[k];
                if (!s.set(qr, qc)) continue;
                const std::size_t qi = s.at(qr, qc);
                if (s.ncount[qi] != 2) {
                    // Direct node-to-node adjacency; register once, from the
                    // lower-id cluster.
                    const std::int32_t other = pixel_cluster.at(qi);
                    if (other <= static_cast<std::int32_t>(id)) continue;
                    auto prefix = intra_cluster_path(pu, m);
                    auto suffix = intra_cluster_path(protos[static_cast<std::size_t>(other)],
                                                     {qr, qc});
                    std::reverse(suffix.begin(), suffix.end());
                    prefix.insert(prefix.end(), suffix.begin(), suffix.end());
                    make_edge(static_cast<NodeId>(id), static_cast<NodeId>(other),
                              std::move(prefix));
                    continue;
                }
                if (consumed[qi]) continue;
                // Walk the chain away from the cluster until the next node
                // pixel.
                std::vector<std::pair<int, int>> chain{{m.first, m.second}};
                std::pair<int, int> prev = m;
                std::pair<int, int> cur = {qr, qc};
                while (true) {
                    consumed[s.at(cur.first, cur.second)] = 1;
                    chain.push_back(cur);
                    std::pair<int, int> next{-1, -1};
                    for (int j = 0; j < 8; ++j) {
                        const int rr = cur.first + detail::kScanRow[j];
                        const int cc = cur.second + detail::kScanCol[j];
                        if (!s.set(rr, cc)) continue;
                        if (std::make_pair(rr, cc) == prev) continue;
                        next = {rr, cc};
                        break;
                    }
                    prev = cur;
                    cur = next;
                    if (is_node_pixel(cur.first, cur.second)) {
                        chain.push_back(cur);
                        break;
                    }
                }
                const std::int32_t other = pixel_cluster.at(s.at(cur.first, cur.second));
                auto prefix = intra_cluster_path(pu, m);
                prefix.pop_back();
                prefix.insert(prefix.end(), chain.begin(), chain.end());
                auto suffix = intra_cluster_path(protos[static_cast<std::size_t>(other)], cur);
                std::reverse(suffix.begin(), suffix.end());
                prefix.insert(prefix.end(), suffix.begin() + 1, suffix.end());
                make_edge(static_cast<NodeId>(id), static_cast<NodeId>(other),
                          std::move(prefix));
            }
        }
    }

    // --- Trace cycles ------------------------------------------------------
    for (std::size_t id = 0; id < protos.size(); ++id) {
        const Proto& p = protos[id];
        if (!p.cycle) continue;
        std::vector<std::pair<int, int>> loop{p.rep};
        std::pair<int, int> prev = p.rep;
        std::pair<int, int> cur{-1, -1};
        for (int k = 0; k < 8; ++k) { // smallest neighbor first: deterministic
            const int rr = p.rep.first + detail::kScanRow[k];
            const int cc = p.rep.second + detail::kScanCol[k];
            if (s.set(rr, cc)) {
                cur = {rr, cc};
                break;
            }
        }
        while (!(cur == p.rep)) {
            loop.push_back(cur);
            std::pair<int, int> next{-1, -1};
            for (int j = 0; j < 8; ++j) {
                const int rr = cur.first + detail::kScanRow[j];
                const int cc = cur.second + detail::kScanCol[j];
                if (!s.set(rr, cc)) continue;
                if (std::make_pair(rr, cc) == prev) continue;
                next = {rr, cc};
                break;
            }
            prev = cur;
            cur = next;
        }
        loop.push_back(p.rep);
        make_edge(static_cast<NodeId>(id), static_cast<NodeId>(id), std::move(loop));
    }

    g.canonicalize();
    return g;
}

} // namespace roadgraph

#endif
