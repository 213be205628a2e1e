#ifndef ROADGRAPH_VECTOR_ROADS_HPP
#define ROADGRAPH_VECTOR_ROADS_HPP

#include <map>
#include <string>
#include <vector>

#include "roadgraph/errors.hpp"
#include "roadgraph/geo.hpp"

namespace roadgraph {

/// Vector road centerlines in geo coordinates.
struct VectorRoadSet {
    std::vector<std::vector<GeoPoint>> lines;
    std::vector<std::map<std::string, std::string>> attributes; // per line, may be empty

    std::size_t size() const { return lines.size(); }
    bool empty() const { return lines.empty(); }

    void validate() const {
        for (const auto& line : lines) {
            if (line.size() < 2)
                throw data_error("road polyline has fewer than 2 points");
            for (std::size_t i = 1; i < line.size(); ++i)
                if (line[i] == line[i - 1])
                    throw data_error("road polyline repeats a point consecutively");
        }
    }

    double total_length() const {
        double sum = 0.0;
        for (const auto& line : lines)
            for (std::size_t i = 1; i < line.size(); ++i)
                sum += distance(line[i], line[i - 1]);
        return sum;
    }
};

} // namespace roadgraph

#endif
