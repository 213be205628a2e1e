#ifndef ROADGRAPH_ERRORS_HPP
#define ROADGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace roadgraph {

/// Base class for all roadgraph errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration (e.g. a non-invertible geo transform).
struct config_error : error {
    using error::error;
};

/// A scalar argument outside its allowed range.
struct parameter_error : error {
    using error::error;
};

/// Operation applied to a raster of the wrong kind.
struct type_error : error {
    using error::error;
};

/// Shape mismatch between grids.
struct dimension_error : error {
    using error::error;
};

/// Input violates an operation precondition (e.g. non-thin skeleton).
struct precondition_error : error {
    using error::error;
};

/// Malformed input file. Carries the byte offset when known.
struct parse_error : error {
    std::size_t byte_offset;
    parse_error(const std::string& msg, std::size_t offset = 0)
        : error(msg), byte_offset(offset) {}
};

/// Structurally valid input with unusable content.
struct data_error : error {
    using error::error;
};

/// Metric is undefined for the given inputs.
struct metric_error : error {
    using error::error;
};

/// No route exists between the requested endpoints.
struct unreachable_error : error {
    using error::error;
};

} // namespace roadgraph

#endif
