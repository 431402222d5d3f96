#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qgeo {

using VertexId = std::uint32_t;

// Vertex as it appears in input files / builders. Coordinates are optional
// model-space positions; only genuinely embedded families carry them.
struct VertexSpec {
    VertexId id = 0;
    bool has_xy = false;
    double x = 0.0;
    double y = 0.0;
};

struct EdgeSpec {
    VertexId a = 0;
    VertexId b = 0;
    double len = 0.0;
};

struct Arc {
    std::uint32_t to;  // internal index
    double len;
};

// Weighted undirected graph discretizing a geodesic metric space.
// Immutable after construction. Invariants enforced at build time:
// connected, positive edge lengths, symmetric adjacency, and (where both
// endpoints are embedded) edge length within 1% of the coordinate distance.
class SpaceGraph {
public:
    static SpaceGraph build(std::string family_tag, double scale_h,
                            std::vector<VertexSpec> vertices,
                            const std::vector<EdgeSpec>& edges);

    std::size_t vertex_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    double scale() const { return scale_h_; }
    const std::string& family() const { return family_; }

    bool has_vertex(VertexId id) const;
    std::uint32_t index_of(VertexId id) const;  // InputError if unknown
    VertexId id_of(std::uint32_t index) const { return ids_[index]; }

    std::span<const Arc> arcs(std::uint32_t index) const {
        return {arcs_.data() + offsets_[index], offsets_[index + 1] - offsets_[index]};
    }

    bool has_coords(std::uint32_t index) const { return has_xy_[index] != 0; }
    double x(std::uint32_t index) const { return xs_[index]; }
    double y(std::uint32_t index) const { return ys_[index]; }

    std::span<const VertexId> ids() const { return ids_; }

    // Edge length between adjacent vertices (by internal index); InputError
    // if not adjacent. Arcs per vertex are sorted by target index.
    double edge_length(std::uint32_t from, std::uint32_t to) const;

private:
    SpaceGraph() = default;

    std::string family_;
    double scale_h_ = 1.0;
    std::vector<VertexId> ids_;  // ascending
    bool contiguous_ids_ = false;
    std::vector<std::uint8_t> has_xy_;
    std::vector<double> xs_, ys_;
    std::vector<std::size_t> offsets_;
    std::vector<Arc> arcs_;
    std::size_t edge_count_ = 0;
};

} // namespace qgeo
