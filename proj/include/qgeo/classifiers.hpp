#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgeo/metric.hpp"
#include "qgeo/path.hpp"
#include "qgeo/quasi.hpp"
#include "qgeo/space_graph.hpp"
#include "qgeo/types.hpp"

namespace qgeo {

// --- contraction -------------------------------------------------------------

struct ContractionWitness {
    VertexId x, y;           // the sampled pair
    VertexId px, py;         // their projections onto the path
    double d_xy;             // d(x, y), strictly below b * d(x, pi(x))
    double d_x_path;         // d(x, pi(x))
    double displacement;     // d(pi(x), pi(y)) along the path
};

struct ContractionTier {
    double radius;           // target distance of x from the path
    double c_hat = 0.0;      // worst displacement observed in this tier
    std::size_t x_samples = 0;
    std::size_t pair_samples = 0;
    bool sampled = false;    // false when the tier shell was empty
    std::optional<ContractionWitness> witness;
};

struct ContractionReport {
    double b = 1.0;
    double c_hat = 0.0;      // worst displacement over all tiers
    std::size_t samples = 0;
    std::vector<ContractionTier> tiers;
    std::optional<ContractionWitness> violation;  // present iff not-contracting
    ContractionVerdict verdict = ContractionVerdict::Inconclusive;
    std::string note;
    nlohmann::json to_json() const;
};

struct ContractionOptions {
    double b = 1.0;                       // in (0, 1]
    std::vector<double> radius_ladder;    // ascending tier radii
    std::size_t budget = 96;              // x samples across all tiers
    std::uint64_t seed = 1;
    // Tier shell: vertices with dist/radius in [shell_low, shell_high].
    double shell_low = 0.8;
    double shell_high = 1.25;
    // Stopping rule constants ("uniformly bounded" finitized): stable when
    // top/mid c_hat ratio stays below flat_ratio; growing when the
    // first-to-last ratio keeps up with the radius ratio.
    double flat_ratio = 1.2;
    double growth_fraction = 0.6;
    double floor_mult = 4.0;              // not-contracting needs c_hat >= floor_mult * h
};

// Samples x at distances spanning each ladder tier from the path and y inside
// the open ball of radius b * d(x, pi(x)); records the worst projection
// displacement per tier. x candidates mix seeded draws with the shell
// vertices ranked by a projection-spread proxy, so thin flat regions cannot
// hide from a small budget.
ContractionReport contraction_scan(const SpaceGraph& g, const PathInSpace& path,
                                   const ContractionOptions& opt);

// Diameter (max arclength separation) of the projections of all vertices of
// the closed ball B(center, radius); the ball must not meet the path.
double ball_projection_diameter(const SpaceGraph& g, const PathInSpace& path,
                                VertexId center, double radius);

// --- divergence ---------------------------------------------------------------

struct DivergenceProfile {
    std::vector<double> radii;
    std::vector<std::optional<double>> detour;  // nullopt = UNREACHABLE
    double fit_exponent = 0.0;                  // +inf when class infinite
    double fit_quality = 0.0;                   // R^2 of the log-log regression
    DivergenceClass klass = DivergenceClass::Inconclusive;
    nlohmann::json to_json() const;
};

// Punctured detour lengths between points r before and r after the path
// midpoint, avoiding the ball of radius r around the midpoint, followed by
// fit_growth. Radii must be increasing and satisfy
// max radius <= length/2 - 2 * scale_h.
DivergenceProfile divergence_profile(const SpaceGraph& g, const PathInSpace& path,
                                     const std::vector<double>& radii, std::uint64_t seed);

// Least-squares slope of log(detour) vs log(r). Classes: linear below 1.3,
// at-least-quadratic from 1.8 up, superlinear-subquadratic between, infinite
// when UNREACHABLE occurs at or beyond the second radius tier.
std::pair<double, DivergenceClass> fit_growth(DivergenceProfile& profile);

// --- stability bound and adversarial search -----------------------------------

// Closed-form wander bound for a (K,L) quasi-geodesic with endpoints on a
// (b,c)-contracting path:
//   D = max{K, L, 1},  A = 2(1 + cD)/b,  m = D(2A + 2L + c + 1),
//   bound = D(2A + 2L + c*m + c + 1) + A + L.
// Strictly increasing in c, K, L and decreasing in b.
double morse_bound(double b, double c, double K, double L);

struct MorseScaleResult {
    double scale;
    double worst_wander = 0.0;
    bool found_candidate = false;
    std::vector<VertexId> witness;      // best validated candidate walk
    QuasiWitness witness_check;         // its verification record
};

struct MorseReport {
    QuasiGeodesicConstants constants;
    std::vector<MorseScaleResult> scales;
    std::optional<double> bound_from_contraction;  // morse_bound output, if supplied
    MorseVerdict verdict = MorseVerdict::Inconclusive;
    std::string note;
    nlohmann::json to_json() const;
};

struct MorseOptions {
    QuasiGeodesicConstants constants{3.0, 2.0};
    std::vector<double> scales;       // endpoint separations along the path
    std::size_t restarts = 3;         // random restarts per scale
    std::size_t growth_steps = 8;     // bulge height ladder length
    std::size_t validation_pairs = 48;
    std::uint64_t seed = 1;
    double flat_ratio = 1.2;
    double growth_fraction = 0.6;
    double floor_mult = 4.0;
    // Optional (b, c) from a contraction report; fills bound_from_contraction.
    std::optional<std::pair<double, double>> contraction_bc;
};

// For each scale, grows bulge candidates with endpoints on the path (greedy
// height growth, seeded restarts), keeps only candidates that still verify as
// (K,L) quasi-geodesics, and records the worst validated wander from the
// path. Flat wander across scales reads as morse-at-scale; linear growth as
// not-morse with the witness stored.
MorseReport morse_adversarial_search(const SpaceGraph& g, const PathInSpace& path,
                                     const MorseOptions& opt);

// --- detour dissection ----------------------------------------------------------

// Executable form of the detour-dissection argument: for a detour of length
// |alpha| < r^2/16 around the ball B_r(mid), set eps = |alpha| / r^2 and
// c = min(eps^{-1/3}, r/4), mark the first detour hit of each projection
// window of width c along the middle half of the path, and return the
// consecutive pair with the smallest along-detour gap together with the
// three-segment shortcut built from it.
struct DissectionWitness {
    double r = 0.0;
    double epsilon = 0.0;        // |detour| / r^2
    double c = 0.0;              // min(eps^{-1/3}, r/4)
    std::size_t pair_index = 0;  // window index m of the selected pair
    double pair_gap = 0.0;       // along-detour distance between the two hits
    double shortcut_len = 0.0;   // <= 7c up to discretization
    double shortcut_clearance = 0.0;  // min distance, middle segment to [y1, y2]
    VertexId z1, z2;             // the selected detour points
    VertexId y1, y2;             // their projections
    nlohmann::json to_json() const;
};

DissectionWitness dissect_detour(const SpaceGraph& g, const PathInSpace& path,
                                 const PathInSpace& detour, double r);

} // namespace qgeo
