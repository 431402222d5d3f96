#include "qgeo/path.hpp"

#include <algorithm>
#include <cmath>

#include "qgeo/errors.hpp"

namespace qgeo {

PathInSpace PathInSpace::from_vertices(const SpaceGraph& g, std::vector<VertexId> vertices) {
    if (vertices.empty()) throw InputError("path needs at least one vertex");
    PathInSpace p;
    p.cum_len_.reserve(vertices.size());
    p.cum_len_.push_back(0.0);
    std::uint32_t prev = g.index_of(vertices[0]);
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        std::uint32_t cur = g.index_of(vertices[i]);
        double len = g.edge_length(prev, cur);  // throws if not adjacent
        p.cum_len_.push_back(p.cum_len_.back() + len);
        prev = cur;
    }
    p.vertices_ = std::move(vertices);
    return p;
}

std::size_t PathInSpace::position_at_arclength(double s) const {
    const double len = cum_len_.back();
    const double guard = 1e-9 * (1.0 + len);
    if (s < -guard || s > len + guard)
        throw InputError("arclength " + std::to_string(s) + " outside [0, " + std::to_string(len) +
                         "]");
    s = std::clamp(s, 0.0, len);
    auto it = std::lower_bound(cum_len_.begin(), cum_len_.end(), s);
    if (it == cum_len_.end()) return cum_len_.size() - 1;
    std::size_t hi = static_cast<std::size_t>(it - cum_len_.begin());
    if (hi == 0) return 0;
    std::size_t lo = hi - 1;
    // Earlier vertex on exact midpoint ties.
    return (s - cum_len_[lo]) <= (cum_len_[hi] - s) ? lo : hi;
}

PathInSpace PathInSpace::reversed(const SpaceGraph& g) const {
    std::vector<VertexId> rev(vertices_.rbegin(), vertices_.rend());
    return from_vertices(g, std::move(rev));
}

} // namespace qgeo
