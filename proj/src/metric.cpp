#include "qgeo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "qgeo/errors.hpp"

namespace qgeo {

namespace {

struct HeapItem {
    double dist;
    std::uint32_t owner;  // only meaningful for multi-source runs
    std::uint32_t vertex;
};

struct HeapCmp {
    bool operator()(const HeapItem& a, const HeapItem& b) const {
        if (a.dist != b.dist) return a.dist > b.dist;
        if (a.owner != b.owner) return a.owner > b.owner;
        return a.vertex > b.vertex;
    }
};

using Heap = std::priority_queue<HeapItem, std::vector<HeapItem>, HeapCmp>;

inline bool vertex_allowed(const Mask* allowed, std::uint32_t v) {
    return allowed == nullptr || (*allowed)[v] != 0;
}

} // namespace

std::vector<double> distance_field(const SpaceGraph& g, std::uint32_t source,
                                   const Mask* allowed) {
    const std::size_t n = g.vertex_count();
    std::vector<double> dist(n, kInfDistance);
    if (!vertex_allowed(allowed, source)) return dist;
    Heap heap;
    dist[source] = 0.0;
    heap.push({0.0, 0, source});
    while (!heap.empty()) {
        auto [d, o, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (const Arc& a : g.arcs(v)) {
            if (!vertex_allowed(allowed, a.to)) continue;
            double nd = d + a.len;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push({nd, 0, a.to});
            }
        }
    }
    return dist;
}

std::optional<double> pair_distance(const SpaceGraph& g, std::uint32_t source,
                                    std::uint32_t target, const Mask* allowed) {
    if (source == target) return vertex_allowed(allowed, source) ? std::optional<double>(0.0)
                                                                 : std::nullopt;
    if (!vertex_allowed(allowed, source) || !vertex_allowed(allowed, target)) return std::nullopt;
    const std::size_t n = g.vertex_count();
    std::vector<double> dist(n, kInfDistance);
    Heap heap;
    dist[source] = 0.0;
    heap.push({0.0, 0, source});
    while (!heap.empty()) {
        auto [d, o, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        if (v == target) return d;
        for (const Arc& a : g.arcs(v)) {
            if (!vertex_allowed(allowed, a.to)) continue;
            double nd = d + a.len;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push({nd, 0, a.to});
            }
        }
    }
    return std::nullopt;
}

std::vector<double> distances_to_targets(const SpaceGraph& g, std::uint32_t source,
                                         std::span<const std::uint32_t> targets) {
    const std::size_t n = g.vertex_count();
    std::vector<double> dist(n, kInfDistance);
    std::vector<std::uint8_t> pending(n, 0);
    std::size_t remaining = 0;
    for (std::uint32_t t : targets) {
        if (!pending[t]) {
            pending[t] = 1;
            ++remaining;
        }
    }
    Heap heap;
    dist[source] = 0.0;
    heap.push({0.0, 0, source});
    while (!heap.empty() && remaining > 0) {
        auto [d, o, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        if (pending[v]) {
            pending[v] = 0;
            --remaining;
        }
        for (const Arc& a : g.arcs(v)) {
            double nd = d + a.len;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push({nd, 0, a.to});
            }
        }
    }
    std::vector<double> out;
    out.reserve(targets.size());
    for (std::uint32_t t : targets) out.push_back(dist[t]);
    return out;
}

std::vector<std::pair<std::uint32_t, double>> ball_around(const SpaceGraph& g,
                                                          std::uint32_t center, double radius,
                                                          bool open) {
    const std::size_t n = g.vertex_count();
    std::vector<double> dist(n, kInfDistance);
    std::vector<std::pair<std::uint32_t, double>> members;
    auto inside = [&](double d) { return open ? d < radius : d <= radius; };
    if (!inside(0.0) && radius < 0.0) return members;
    Heap heap;
    dist[center] = 0.0;
    heap.push({0.0, 0, center});
    while (!heap.empty()) {
        auto [d, o, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        if (!inside(d)) continue;
        members.emplace_back(v, d);
        for (const Arc& a : g.arcs(v)) {
            double nd = d + a.len;
            if (nd < dist[a.to] && inside(nd)) {
                dist[a.to] = nd;
                heap.push({nd, 0, a.to});
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

PathField distance_to_set(const SpaceGraph& g, std::span<const std::uint32_t> sources) {
    const std::size_t n = g.vertex_count();
    PathField f;
    f.dist.assign(n, kInfDistance);
    f.owner_pos.assign(n, PathField::npos);
    Heap heap;
    for (std::uint32_t pos = 0; pos < sources.size(); ++pos) {
        std::uint32_t v = sources[pos];
        // First (smallest) position wins on repeated vertices.
        if (f.dist[v] == 0.0) continue;
        f.dist[v] = 0.0;
        f.owner_pos[v] = pos;
        heap.push({0.0, pos, v});
    }
    while (!heap.empty()) {
        auto [d, owner, v] = heap.top();
        heap.pop();
        if (d > f.dist[v] || (d == f.dist[v] && owner > f.owner_pos[v])) continue;
        for (const Arc& a : g.arcs(v)) {
            double nd = d + a.len;
            // Lexicographic (distance, owner) relaxation: the settled owner is
            // the smallest arclength position among all nearest seeds.
            if (nd < f.dist[a.to] || (nd == f.dist[a.to] && owner < f.owner_pos[a.to])) {
                f.dist[a.to] = nd;
                f.owner_pos[a.to] = owner;
                heap.push({nd, owner, a.to});
            }
        }
    }
    return f;
}

PathField distance_to_path(const SpaceGraph& g, const PathInSpace& p) {
    std::vector<std::uint32_t> sources;
    sources.reserve(p.size());
    for (VertexId id : p.vertices()) sources.push_back(g.index_of(id));
    return distance_to_set(g, sources);
}

double shortest_distance(const SpaceGraph& g, VertexId u, VertexId v) {
    std::uint32_t iu = g.index_of(u);
    std::uint32_t iv = g.index_of(v);
    if (iu == iv) return 0.0;
    if (iu > iv) std::swap(iu, iv);  // canonical direction: exact symmetry
    auto d = pair_distance(g, iu, iv);
    if (!d) throw InputError("vertices are not connected");  // cannot happen: graphs are connected
    return *d;
}

namespace {

// Greedy front-to-back reconstruction against a distance-to-target field:
// at each step take the smallest-index neighbor that still lies on an optimal
// continuation. Produces the lexicographically smallest optimal sequence.
std::vector<VertexId> reconstruct_walk(const SpaceGraph& g, std::uint32_t from, std::uint32_t to,
                                       const std::vector<double>& dist_to_target,
                                       const Mask* allowed) {
    std::vector<VertexId> seq;
    seq.push_back(g.id_of(from));
    std::uint32_t cur = from;
    const std::size_t hard_cap = g.vertex_count() + 1;
    while (cur != to) {
        if (seq.size() > hard_cap) throw Error("path reconstruction failed to make progress");
        const double here = dist_to_target[cur];
        const double eps = 1e-12 * std::max(1.0, here);
        std::uint32_t best = PathField::npos;
        for (const Arc& a : g.arcs(cur)) {  // arcs sorted by index: first hit is smallest
            if (!vertex_allowed(allowed, a.to)) continue;
            double via = dist_to_target[a.to];
            if (via >= here) continue;
            if (std::abs(via + a.len - here) <= eps) {
                best = a.to;
                break;
            }
        }
        if (best == PathField::npos) throw Error("path reconstruction found no predecessor");
        seq.push_back(g.id_of(best));
        cur = best;
    }
    return seq;
}

} // namespace

PathInSpace shortest_path(const SpaceGraph& g, VertexId u, VertexId v) {
    std::uint32_t iu = g.index_of(u);
    std::uint32_t iv = g.index_of(v);
    if (iu == iv) return PathInSpace::from_vertices(g, {u});
    std::vector<double> dist = distance_field(g, iv);
    return PathInSpace::from_vertices(g, reconstruct_walk(g, iu, iv, dist, nullptr));
}

std::vector<VertexId> greedy_optimal_walk(const SpaceGraph& g, std::uint32_t from,
                                          std::uint32_t to,
                                          const std::vector<double>& dist_to_target) {
    return reconstruct_walk(g, from, to, dist_to_target, nullptr);
}

namespace {

Mask puncture_mask(const SpaceGraph& g, std::uint32_t icenter, double radius,
                   std::uint32_t iu, std::uint32_t iv) {
    if (radius < 0.0) throw InputError("puncture radius must be nonnegative");
    std::vector<double> from_center = distance_field(g, icenter);
    const double eps = puncture_epsilon(radius);
    if (from_center[iu] < radius - eps || from_center[iv] < radius - eps)
        throw PreconditionError("puncture endpoint lies inside the removed ball");
    Mask allowed(g.vertex_count(), 0);
    for (std::size_t w = 0; w < allowed.size(); ++w)
        allowed[w] = from_center[w] >= radius - eps ? 1 : 0;
    return allowed;
}

} // namespace

std::optional<double> punctured_distance(const SpaceGraph& g, VertexId u, VertexId v,
                                         VertexId center, double radius) {
    std::uint32_t iu = g.index_of(u);
    std::uint32_t iv = g.index_of(v);
    std::uint32_t ic = g.index_of(center);
    if (radius == 0.0) {
        if (iu == iv) return 0.0;
        return pair_distance(g, std::min(iu, iv), std::max(iu, iv));
    }
    Mask allowed = puncture_mask(g, ic, radius, iu, iv);
    if (iu == iv) return 0.0;
    return pair_distance(g, std::min(iu, iv), std::max(iu, iv), &allowed);
}

std::optional<PathInSpace> punctured_shortest_path(const SpaceGraph& g, VertexId u, VertexId v,
                                                   VertexId center, double radius) {
    std::uint32_t iu = g.index_of(u);
    std::uint32_t iv = g.index_of(v);
    std::uint32_t ic = g.index_of(center);
    Mask allowed = puncture_mask(g, ic, radius, iu, iv);
    if (iu == iv) return PathInSpace::from_vertices(g, {u});
    std::vector<double> dist = distance_field(g, iv, &allowed);
    if (dist[iu] == kInfDistance) return std::nullopt;
    return PathInSpace::from_vertices(g, reconstruct_walk(g, iu, iv, dist, &allowed));
}

double path_length(const PathInSpace& p) { return p.length(); }

VertexId point_at_arclength(const PathInSpace& p, double s) { return p.vertex_at_arclength(s); }

double hausdorff_distance(const SpaceGraph& g, const PathInSpace& p1, const PathInSpace& p2) {
    PathField to_p2 = distance_to_path(g, p2);
    double d12 = 0.0;
    for (VertexId id : p1.vertices()) d12 = std::max(d12, to_p2.dist[g.index_of(id)]);
    PathField to_p1 = distance_to_path(g, p1);
    double d21 = 0.0;
    for (VertexId id : p2.vertices()) d21 = std::max(d21, to_p1.dist[g.index_of(id)]);
    return std::max(d12, d21);
}

} // namespace qgeo
