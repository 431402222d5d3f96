#pragma once

#include <cstdint>
#include <cstddef>

#include "qgeo/path.hpp"
#include "qgeo/space_graph.hpp"

namespace qgeo {

struct QuasiGeodesicConstants {
    double K = 1.0;  // multiplicative constant, >= 1
    double L = 0.0;  // additive constant, >= 0
};

// Result of sampling the two-sided quasi-geodesic inequality
//   |s - t| / K - L  <=  d(gamma(s), gamma(t))  <=  K |s - t| + L
// over arclength parameter pairs. worst_margin <= 0 means every sampled pair
// satisfied both sides.
struct QuasiWitness {
    bool holds = true;
    double worst_margin = -1.0;  // max violation over samples; <= 0 passes
    double s = 0.0, t = 0.0;     // parameters of the worst pair
    double distance = 0.0;       // d(gamma(s), gamma(t))
    double lower_bound = 0.0;    // |s-t|/K - L
    double upper_bound = 0.0;    // K|s-t| + L
    std::size_t samples_used = 0;
};

// Checks the inequality at `sample_pairs` seeded random parameter pairs plus
// all pairs from a uniform grid of ceil(sqrt(sample_pairs)) parameters.
// Deterministic given the seed.
QuasiWitness verify_quasi_geodesic(const SpaceGraph& g, const PathInSpace& p,
                                   QuasiGeodesicConstants k, std::size_t sample_pairs,
                                   std::uint64_t seed);

// Minimal K over the same sample set with L fixed at 2 * scale_h (the
// discretization jitter floor). The result passes verify_quasi_geodesic on
// the same samples.
QuasiGeodesicConstants tightest_quasi_constants(const SpaceGraph& g, const PathInSpace& p,
                                                std::size_t samples, std::uint64_t seed);

} // namespace qgeo
