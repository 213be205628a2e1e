#ifndef ROADGRAPH_CONFIG_HPP
#define ROADGRAPH_CONFIG_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "roadgraph/apls.hpp"
#include "roadgraph/clean.hpp"
#include "roadgraph/errors.hpp"
#include "roadgraph/refine.hpp"
#include "roadgraph/topo.hpp"

namespace roadgraph {

/// Every tunable of the pipeline as one flat JSON-serializable object.
/// Unknown keys are rejected on load.
struct PipelineConfig {
    double threshold = 0.3;
    int open_radius_px = 2;
    int close_radius_px = 2;
    int smooth_radius_px = 1;
    double halfwidth_m = 2.0;
    double min_subgraph_m = 80.0;
    double max_spur_px = 10.0;
    double max_gap_px = 20.0;
    int window_px = 1300;
    int overlap_px = 260;
    int n_control = 500;
    double snap_buffer_m = 4.0;
    bool inject_midpoints = false;
    bool symmetric = true;
    std::uint64_t apls_seed = 0;
    double hole_size_m = 4.0;
    double radius_m = 300.0;
    double sample_spacing_m = 5.0;
    double seed_spacing_m = 50.0;
    std::uint64_t topo_seed = 0;
    int threads = 0;

    CleanParams clean_params() const {
        return {threshold, open_radius_px, close_radius_px, smooth_radius_px};
    }
    RefineParams refine_params() const {
        return {min_subgraph_m, max_spur_px, max_gap_px};
    }
    AplsParams apls_params() const {
        return {n_control, snap_buffer_m, inject_midpoints, apls_seed, symmetric};
    }
    TopoParams topo_params() const {
        return {hole_size_m, radius_m, sample_spacing_m, seed_spacing_m, topo_seed};
    }

    void validate() const {
        if (threshold < 0.0 || threshold > 1.0)
            throw parameter_error("config: threshold must lie in [0,1]");
        if (open_radius_px < 1 || close_radius_px < 1 || smooth_radius_px < 1)
            throw parameter_error("config: morphology radii must be >= 1");
        if (halfwidth_m <= 0.0)
            throw parameter_error("config: halfwidth_m must be > 0");
        if (window_px < 1 || overlap_px < 0 || overlap_px >= window_px)
            throw parameter_error("config: need 0 <= overlap_px < window_px");
        if (threads < 0) throw parameter_error("config: threads must be >= 0");
        refine_params().validate();
        apls_params().validate();
        topo_params().validate();
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["threshold"] = threshold;
        j["open_radius_px"] = open_radius_px;
        j["close_radius_px"] = close_radius_px;
        j["smooth_radius_px"] = smooth_radius_px;
        j["halfwidth_m"] = halfwidth_m;
        j["min_subgraph_m"] = min_subgraph_m;
        j["max_spur_px"] = max_spur_px;
        j["max_gap_px"] = max_gap_px;
        j["window_px"] = window_px;
        j["overlap_px"] = overlap_px;
        j["n_control"] = n_control;
        j["snap_buffer_m"] = snap_buffer_m;
        j["inject_midpoints"] = inject_midpoints;
        j["symmetric"] = symmetric;
        j["apls_seed"] = apls_seed;
        j["hole_size_m"] = hole_size_m;
        j["radius_m"] = radius_m;
        j["sample_spacing_m"] = sample_spacing_m;
        j["seed_spacing_m"] = seed_spacing_m;
        j["topo_seed"] = topo_seed;
        j["threads"] = threads;
        return j;
    }

    static PipelineConfig from_json_text(const std::string& text) {
        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw parse_error(std::string("config: ") + e.what(), e.byte);
        }
        if (!j.is_object()) throw data_error("config: expected a JSON object");
        PipelineConfig c;
        for (const auto& [key, value] : j.items()) {
            if (key == "threshold") c.threshold = value.get<double>();
            else if (key == "open_radius_px") c.open_radius_px = value.get<int>();
            else if (key == "close_radius_px") c.close_radius_px = value.get<int>();
            else if (key == "smooth_radius_px") c.smooth_radius_px = value.get<int>();
            else if (key == "halfwidth_m") c.halfwidth_m = value.get<double>();
            else if (key == "min_subgraph_m") c.min_subgraph_m = value.get<double>();
            else if (key == "max_spur_px") c.max_spur_px = value.get<double>();
            else if (key == "max_gap_px") c.max_gap_px = value.get<double>();
            else if (key == "window_px") c.window_px = value.get<int>();
            else if (key == "overlap_px") c.overlap_px = value.get<int>();
            else if (key == "n_control") c.n_control = value.get<int>();
            else if (key == "snap_buffer_m") c.snap_buffer_m = value.get<double>();
            else if (key == "inject_midpoints") c.inject_midpoints = value.get<bool>();
            else if (key == "symmetric") c.symmetric = value.get<bool>();
            else if (key == "apls_seed") c.apls_seed = value.get<std::uint64_t>();
            else if (key == "hole_size_m") c.hole_size_m = value.get<double>();
            else if (key == "radius_m") c.radius_m = value.get<double>();
            else if (key == "sample_spacing_m") c.sample_spacing_m = value.get<double>();
            else if (key == "seed_spacing_m") c.seed_spacing_m = value.get<double>();
            else if (key == "topo_seed") c.topo_seed = value.get<std::uint64_t>();
            else if (key == "threads") c.threads = value.get<int>();
            else throw parameter_error("config: unknown key '" + key + "'");
        }
        c.validate();
        return c;
    }
};

} // namespace roadgraph

#endif
