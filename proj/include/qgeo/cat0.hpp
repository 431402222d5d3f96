#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgeo/metric.hpp"
#include "qgeo/path.hpp"
#include "qgeo/space_graph.hpp"

namespace qgeo {

// Evidence record for one validity check. worst_violation <= tolerance_used
// is a pass; `conclusive` is false only for the uniqueness check when the
// search budget ran out before either verdict.
struct CheckReport {
    std::string name;
    std::size_t samples = 0;
    double worst_violation = -kInfDistance;
    nlohmann::json worst_witness;
    double tolerance_used = 0.0;
    bool conclusive = true;
    std::string note;

    bool passed() const { return conclusive && worst_violation <= tolerance_used; }
    nlohmann::json to_json() const;
};

// Per-family check tolerances, expressed as multiples of scale_h. The
// multipliers were calibrated by a sweep over the shipped builders (see
// tests/fixtures/tolerance_sweep.json); discretization error is the only
// slack they grant.
struct TolProfile {
    std::string name = "default";
    double comparison_mult = 6.0;
    double convexity_mult = 3.0;
    double projection_mult = 4.0;
    // Sampled configurations keep pairwise distances within this window (in
    // units of scale_h); beyond it stencil anisotropy, not curvature,
    // dominates the comparison quantities.
    double window_min_mult = 10.0;
    double window_max_mult = 120.0;
    double uniqueness_slack = 0.01;
    double uniqueness_tube_rel = 0.2;
    double uniqueness_tube_abs_mult = 4.0;
};

// Profile registered for a family tag, or the default profile.
const TolProfile& tolerance_profile(const std::string& family);

// Samples triples (p,q,r), builds the Euclidean comparison triangle from the
// three graph distances, and checks d(p,m) <= comparison distance + tol for
// points m on the q-r geodesic. Degenerate (near-collinear) triples are
// skipped, not failed.
CheckReport comparison_triangle_check(const SpaceGraph& g, std::size_t triangle_samples,
                                      std::size_t interior_samples, double tol,
                                      std::uint64_t seed);

// d(c1(t), c2(t)) <= (1-t) d(c1(0), c2(0)) + t d(c1(1), c2(1)) at uniformly
// spaced t, both paths parameterized proportional to arclength. Both inputs
// must be shortest paths (PreconditionError otherwise).
CheckReport convexity_check(const SpaceGraph& g, const PathInSpace& path1,
                            const PathInSpace& path2, std::size_t t_samples, double tol);

// Nearest path vertex by graph distance; ties resolve to the smallest
// arclength parameter.
struct Projection {
    VertexId vertex;
    double distance;
    std::size_t path_pos;
};
Projection nearest_point_projection(const SpaceGraph& g, VertexId x, const PathInSpace& p);

// Over sampled pairs: d(pi(x), pi(y)) <= d(x, y) + tol, projecting onto a
// shortest path p.
CheckReport projection_nonexpansive_check(const SpaceGraph& g, const PathInSpace& p,
                                          std::size_t pair_samples, double tol,
                                          std::uint64_t seed);

// For sampled pairs (u,v): every vertex that lies on some u-v walk of length
// <= (1+slack) d(u,v) must stay within `tube` of the u-v geodesic. A failure
// is only reported with a constructed witness walk; if no witness survives
// within the attempt cap the verdict is inconclusive rather than fail.
CheckReport geodesic_uniqueness_check(const SpaceGraph& g, std::size_t pair_samples,
                                      double slack, double tube_rel, double tube_abs,
                                      std::uint64_t seed);

// --- suite ------------------------------------------------------------------

struct Cat0SuiteOptions {
    std::size_t triangle_samples = 24;
    std::size_t interior_samples = 5;
    std::size_t convexity_pairs = 12;
    std::size_t t_samples = 17;
    std::size_t projection_pairs = 64;
    std::size_t uniqueness_pairs = 4;
    bool run_uniqueness = false;
    std::uint64_t seed = 1;
};

// Runs comparison / convexity / projection (and optionally uniqueness)
// against `g`, projecting onto `base` when given (must be a shortest path),
// else onto a seeded far-pair geodesic. Convexity aggregates the worst
// violation over sampled geodesic pairs, trying both orientations.
std::vector<CheckReport> run_cat0_suite(const SpaceGraph& g, const PathInSpace* base,
                                        const Cat0SuiteOptions& opt, const TolProfile& tol);

// Negative control: cycle graph C_n with unit edges; fails all three checks
// for n >= ~12.
SpaceGraph build_cycle_negative_control(int n);

} // namespace qgeo
