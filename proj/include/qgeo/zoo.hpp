#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgeo/path.hpp"
#include "qgeo/space_graph.hpp"
#include "qgeo/types.hpp"

namespace qgeo {

inline constexpr std::size_t kDefaultVertexBudget = 2'000'000;

// What the construction is known to exhibit; acceptance compares classifier
// verdicts against these records.
struct ExpectedClassification {
    bool morse = false;
    bool contracting = false;
    DivergenceClass divergence = DivergenceClass::Linear;
};

struct ZooEntry {
    SpaceGraph graph;
    PathInSpace base_path;  // designated geodesic, shortest between its endpoints
    ExpectedClassification expected;
};

// Flat square grid with a 16-neighbor stencil (worst-case metric distortion
// ~2.8%); base path is the x-axis.
ZooEntry build_euclidean_plane(double halfwidth, double h,
                               std::size_t budget = kDefaultVertexBudget);

// Polar grid for ds^2 = dr^2 + sinh^2(r) dtheta^2: radial spokes of pitch h,
// ring arcs of length sinh(r)*dtheta <= 2h, plus ring-to-ring diagonals. The
// angular positions are shared by all rings so the graph distance from the
// center to ring k is exactly k*h. Base path is the theta=0 / theta=pi
// diameter.
ZooEntry build_hyperbolic_plane(double max_r, double h,
                                std::size_t budget = kDefaultVertexBudget);

// Rooted tree, unit edges: the root has `degree` children, inner vertices
// degree-1 children. Base path joins the first leaf of the first subtree to
// the first leaf of the second subtree through the root.
ZooEntry build_regular_tree(int degree, int depth,
                            std::size_t budget = kDefaultVertexBudget);

// Two Euclidean grids sharing exactly one vertex (both origins identified);
// base path runs along plane A's x-axis, through the wedge, out plane B's
// x-axis. Plane B's embedding is reflected through the origin so both sheets
// satisfy the per-edge coordinate invariant.
ZooEntry build_plane_wedge(double halfwidth, double h,
                           std::size_t budget = kDefaultVertexBudget);

// Hyperbolic polar grid glued along its diameter to one boundary row of a
// Euclidean strip of width strip_halfwidth. Base path is the gluing line.
ZooEntry build_strip_glued_hyperbolic(double max_r, double strip_halfwidth, double h,
                                      std::size_t budget = kDefaultVertexBudget);

// l2-like product of a regular tree (unit edges) and a segment sampled at
// pitch h: the full (1,0),(0,1),(1,1),(1,2),(2,1) stencil over tree-distance
// x line-distance keeps sampled product distances within a few percent of
// sqrt(dT^2 + dR^2). Base path is (tree diameter) x {0}.
ZooEntry build_tree_cross_line(int degree, int depth, double halfwidth, double h,
                               std::size_t budget = kDefaultVertexBudget);

// --- registry (drives `zoo list` / `zoo build`) -----------------------------

struct ZooParamSpec {
    std::string name;
    double default_value;
    std::string doc;
};

struct ZooFamily {
    std::string name;
    std::string doc;
    std::vector<ZooParamSpec> params;
};

const std::vector<ZooFamily>& zoo_families();

// Builds by family name with named parameters (missing ones take defaults).
ZooEntry build_zoo_entry(const std::string& family,
                         const std::vector<std::pair<std::string, double>>& params,
                         std::size_t budget = kDefaultVertexBudget);

} // namespace qgeo
