#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qgeo/space_graph.hpp"

namespace qgeo {

// Ordered vertex walk with cumulative arclength parameterization. This is the
// library's representation of (quasi-)geodesics: unit-speed by construction,
// continuous and rectifiable because consecutive vertices are adjacent.
class PathInSpace {
public:
    // Validates adjacency against g and accumulates edge lengths.
    static PathInSpace from_vertices(const SpaceGraph& g, std::vector<VertexId> vertices);

    std::size_t size() const { return vertices_.size(); }
    double length() const { return cum_len_.back(); }

    std::span<const VertexId> vertices() const { return vertices_; }
    std::span<const double> cumulative_lengths() const { return cum_len_; }

    VertexId front() const { return vertices_.front(); }
    VertexId back() const { return vertices_.back(); }
    VertexId vertex(std::size_t pos) const { return vertices_[pos]; }
    double arclength(std::size_t pos) const { return cum_len_[pos]; }

    // Position whose cumulative arclength is nearest to s, earlier on ties.
    // InputError if s is outside [0, length()] (up to a tiny float guard).
    std::size_t position_at_arclength(double s) const;
    VertexId vertex_at_arclength(double s) const { return vertices_[position_at_arclength(s)]; }

    PathInSpace reversed(const SpaceGraph& g) const;

private:
    PathInSpace() = default;

    std::vector<VertexId> vertices_;
    std::vector<double> cum_len_;
};

} // namespace qgeo
