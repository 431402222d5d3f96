#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qgeo/path.hpp"
#include "qgeo/space_graph.hpp"

namespace qgeo {

inline constexpr double kInfDistance = std::numeric_limits<double>::infinity();

// Vertices with dist < radius - eps are removed; the boundary (dist == radius)
// stays, so detour endpoints at distance exactly r remain legal.
inline double puncture_epsilon(double radius) { return 1e-9 * (1.0 + radius); }

using Mask = std::vector<std::uint8_t>;  // 1 = vertex allowed

// --- single-source fields -------------------------------------------------

// Distances from one source to every vertex (inf where unreachable / masked).
std::vector<double> distance_field(const SpaceGraph& g, std::uint32_t source,
                                   const Mask* allowed = nullptr);

// Early-exit point-to-point distance; nullopt when unreachable.
std::optional<double> pair_distance(const SpaceGraph& g, std::uint32_t source,
                                    std::uint32_t target, const Mask* allowed = nullptr);

// Distances from `source` to each target, stopping once all are settled.
std::vector<double> distances_to_targets(const SpaceGraph& g, std::uint32_t source,
                                         std::span<const std::uint32_t> targets);

// All vertices within `radius` of `center` (closed ball by default), as
// (index, distance) sorted by index.
std::vector<std::pair<std::uint32_t, double>> ball_around(const SpaceGraph& g,
                                                          std::uint32_t center, double radius,
                                                          bool open = false);

// --- distance to a path ----------------------------------------------------

// Multi-source field seeded on the path's vertices. owner_pos[v] is the path
// position realizing dist[v]; ties resolve to the smallest arclength position,
// which makes every projection below deterministic.
struct PathField {
    std::vector<double> dist;
    std::vector<std::uint32_t> owner_pos;  // npos when unreachable
    static constexpr std::uint32_t npos = 0xffffffffu;
};

PathField distance_to_path(const SpaceGraph& g, const PathInSpace& p);

// Same, seeded on an arbitrary vertex set (owner = position in `sources`).
PathField distance_to_set(const SpaceGraph& g, std::span<const std::uint32_t> sources);

// --- spec operations --------------------------------------------------------

// Minimal walk length u -> v. Computed from the smaller endpoint id so the
// result is bit-exactly symmetric.
double shortest_distance(const SpaceGraph& g, VertexId u, VertexId v);

// Shortest path with deterministic tie-breaking: the lexicographically
// smallest vertex sequence among optimal predecessor choices.
PathInSpace shortest_path(const SpaceGraph& g, VertexId u, VertexId v);

// Shortest walk using only vertices w with d(w, center) >= radius; nullopt
// when no such walk exists. Preconditions: both endpoints outside the open
// ball (PreconditionError otherwise).
std::optional<double> punctured_distance(const SpaceGraph& g, VertexId u, VertexId v,
                                         VertexId center, double radius);
std::optional<PathInSpace> punctured_shortest_path(const SpaceGraph& g, VertexId u, VertexId v,
                                                   VertexId center, double radius);

double path_length(const PathInSpace& p);

// Nearest path vertex by arclength parameter (see PathInSpace).
VertexId point_at_arclength(const PathInSpace& p, double s);

// max over vertices of either path of the min graph distance to the other
// path's vertex set; a pseudometric on paths.
double hausdorff_distance(const SpaceGraph& g, const PathInSpace& p1, const PathInSpace& p2);

// Deterministic walk from `from` to `to` against a distance-to-`to` field:
// at every step the smallest-index neighbor on an optimal continuation.
// Error if the field admits no optimal step (e.g. `from` unreachable).
std::vector<VertexId> greedy_optimal_walk(const SpaceGraph& g, std::uint32_t from,
                                          std::uint32_t to,
                                          const std::vector<double>& dist_to_target);

} // namespace qgeo
