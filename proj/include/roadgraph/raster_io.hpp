#ifndef ROADGRAPH_RASTER_IO_HPP
#define ROADGRAPH_RASTER_IO_HPP

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/raster.hpp"

namespace roadgraph {

// ---------------------------------------------------------------------------
// PGM (P5, maxval 255). probability = value/255; binary = value >= 128.
// ---------------------------------------------------------------------------

inline std::string write_pgm_string(const RasterGrid& g) {
    std::string out = "P5\n" + std::to_string(g.width) + " " +
                      std::to_string(g.height) + "\n255\n";
    out.reserve(out.size() + g.size());
    for (float v : g.values) {
        const int byte = g.kind == RasterKind::binary
                             ? (v != 0.0f ? 255 : 0)
                             : static_cast<int>(std::lround(v * 255.0));
        out.push_back(static_cast<char>(static_cast<unsigned char>(byte)));
    }
    return out;
}

namespace detail {

inline void skip_pgm_separators(const std::string& s, std::size_t& pos) {
    while (pos < s.size()) {
        const char ch = s[pos];
        if (ch == '#') {
            while (pos < s.size() && s[pos] != '\n') ++pos;
        } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
            ++pos;
        } else {
            break;
        }
    }
}

inline long parse_pgm_int(const std::string& s, std::size_t& pos, const char* what) {
    skip_pgm_separators(s, pos);
    std::size_t start = pos;
    long v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        v = v * 10 + (s[pos] - '0');
        ++pos;
    }
    if (pos == start)
        throw parse_error(std::string("PGM: expected ") + what, pos);
    return v;
}

} // namespace detail

inline RasterGrid parse_pgm_string(const std::string& bytes, RasterKind kind,
                                   GeoTransform transform = GeoTransform::identity()) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw parse_error("PGM: missing P5 magic", 0);
    std::size_t pos = 2;
    const long w = detail::parse_pgm_int(bytes, pos, "width");
    const long h = detail::parse_pgm_int(bytes, pos, "height");
    const long maxval = detail::parse_pgm_int(bytes, pos, "maxval");
    if (w <= 0 || h <= 0)
        throw parse_error("PGM: non-positive dimensions", pos);
    if (maxval != 255)
        throw parse_error("PGM: expected maxval 255, got " + std::to_string(maxval), pos);
    if (pos >= bytes.size())
        throw parse_error("PGM: truncated header", pos);
    ++pos; // single whitespace byte after maxval
    const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() - pos < need)
        throw parse_error("PGM: truncated pixel data", bytes.size());
    RasterGrid g(static_cast<int>(w), static_cast<int>(h), kind, transform);
    for (std::size_t i = 0; i < need; ++i) {
        const unsigned char b = static_cast<unsigned char>(bytes[pos + i]);
        g.values[i] = kind == RasterKind::binary ? (b >= 128 ? 1.0f : 0.0f)
                                                 : static_cast<float>(b) / 255.0f;
    }
    return g;
}

// ---------------------------------------------------------------------------
// RGF1 float grid: "RGF1", u32 width, u32 height (little endian), then
// width*height little-endian IEEE-754 float32 values, row-major.
// ---------------------------------------------------------------------------

namespace detail {

inline void put_u32_le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

inline std::uint32_t get_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace detail

inline std::string write_rgf_string(const RasterGrid& g) {
    std::string out = "RGF1";
    detail::put_u32_le(out, static_cast<std::uint32_t>(g.width));
    detail::put_u32_le(out, static_cast<std::uint32_t>(g.height));
    out.resize(12 + g.size() * 4);
    static_assert(sizeof(float) == 4);
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::uint32_t bits;
        std::memcpy(&bits, &g.values[i], 4);
        out[12 + 4 * i + 0] = static_cast<char>(bits & 0xFF);
        out[12 + 4 * i + 1] = static_cast<char>((bits >> 8) & 0xFF);
        out[12 + 4 * i + 2] = static_cast<char>((bits >> 16) & 0xFF);
        out[12 + 4 * i + 3] = static_cast<char>((bits >> 24) & 0xFF);
    }
    return out;
}

inline RasterGrid parse_rgf_string(const std::string& bytes, RasterKind kind = RasterKind::probability,
                                   GeoTransform transform = GeoTransform::identity()) {
    if (bytes.size() < 12 || bytes.compare(0, 4, "RGF1") != 0)
        throw parse_error("RGF1: missing magic", 0);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint32_t w = detail::get_u32_le(p + 4);
    const std::uint32_t h = detail::get_u32_le(p + 8);
    const std::size_t need = static_cast<std::size_t>(w) * h;
    if (bytes.size() != 12 + need * 4)
        throw parse_error("RGF1: size mismatch for " + std::to_string(w) + "x" +
                              std::to_string(h) + " grid",
                          bytes.size());
    RasterGrid g(static_cast<int>(w), static_cast<int>(h), kind, transform);
    for (std::size_t i = 0; i < need; ++i) {
        std::uint32_t bits = detail::get_u32_le(p + 12 + 4 * i);
        float v;
        std::memcpy(&v, &bits, 4);
        if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
            throw data_error("RGF1: value outside [0,1] at index " + std::to_string(i));
        g.values[i] = v;
    }
    return g;
}

// ---------------------------------------------------------------------------
// File helpers. Grid files get a world-file sidecar with the transform.
// ---------------------------------------------------------------------------

inline std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spill_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw data_error("write failed: " + path);
}

inline bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Read a .pgm or .rgf grid, picking the parser from the file suffix and
/// loading the transform from a ".wld" sidecar when present.
inline RasterGrid read_grid_file(const std::string& path, RasterKind kind) {
    GeoTransform t = GeoTransform::identity();
    const std::string wld = world_file_path(path);
    if (std::ifstream probe{wld}; probe.good()) t = read_world_file(wld);
    const std::string bytes = slurp_file(path);
    if (has_suffix(path, ".rgf")) return parse_rgf_string(bytes, kind, t);
    return parse_pgm_string(bytes, kind, t);
}

inline void write_grid_file(const std::string& path, const RasterGrid& g,
                            bool with_world_file = true) {
    if (has_suffix(path, ".rgf"))
        spill_file(path, write_rgf_string(g));
    else
        spill_file(path, write_pgm_string(g));
    if (with_world_file) write_world_file(world_file_path(path), g.transform);
}

} // namespace roadgraph

#endif
