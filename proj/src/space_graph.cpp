#include "qgeo/space_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "qgeo/errors.hpp"

namespace qgeo {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

SpaceGraph SpaceGraph::build(std::string family_tag, double scale_h,
                             std::vector<VertexSpec> vertices,
                             const std::vector<EdgeSpec>& edges) {
    if (!(scale_h > 0.0)) throw InputError("scale_h must be positive");
    if (vertices.empty()) throw InputError("graph needs at least one vertex");

    SpaceGraph g;
    g.family_ = std::move(family_tag);
    g.scale_h_ = scale_h;

    std::sort(vertices.begin(), vertices.end(),
              [](const VertexSpec& a, const VertexSpec& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i].id == vertices[i - 1].id)
            throw InputError("duplicate vertex id " + std::to_string(vertices[i].id));
    }

    const std::size_t n = vertices.size();
    g.ids_.resize(n);
    g.has_xy_.resize(n);
    g.xs_.resize(n);
    g.ys_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.ids_[i] = vertices[i].id;
        g.has_xy_[i] = vertices[i].has_xy ? 1 : 0;
        g.xs_[i] = vertices[i].x;
        g.ys_[i] = vertices[i].y;
    }
    g.contiguous_ids_ = (g.ids_.front() == 0 && g.ids_.back() == n - 1);

    auto index_of_checked = [&](VertexId id) -> std::uint32_t {
        if (g.contiguous_ids_) {
            if (id >= n) throw InputError("edge references unknown vertex " + std::to_string(id));
            return id;
        }
        auto it = std::lower_bound(g.ids_.begin(), g.ids_.end(), id);
        if (it == g.ids_.end() || *it != id)
            throw InputError("edge references unknown vertex " + std::to_string(id));
        return static_cast<std::uint32_t>(it - g.ids_.begin());
    };

    // Deduplicate undirected edges; conflicting lengths are an input error.
    std::unordered_map<std::uint64_t, double> seen;
    seen.reserve(edges.size() * 2);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<double> lens;
    pairs.reserve(edges.size());
    lens.reserve(edges.size());
    for (const EdgeSpec& e : edges) {
        if (!(e.len > 0.0)) throw InputError("edge length must be positive");
        std::uint32_t ia = index_of_checked(e.a);
        std::uint32_t ib = index_of_checked(e.b);
        if (ia == ib) throw InputError("self-loop on vertex " + std::to_string(e.a));
        std::uint64_t key = pair_key(ia, ib);
        auto [it, inserted] = seen.emplace(key, e.len);
        if (!inserted) {
            if (it->second != e.len)
                throw InputError("conflicting lengths for edge " + std::to_string(e.a) + "-" +
                                 std::to_string(e.b));
            continue;
        }
        if (g.has_xy_[ia] && g.has_xy_[ib]) {
            double dx = g.xs_[ia] - g.xs_[ib];
            double dy = g.ys_[ia] - g.ys_[ib];
            double model = std::hypot(dx, dy);
            if (std::abs(e.len - model) > 0.01 * std::max(e.len, model))
                throw InputError("edge length deviates >1% from embedded distance on edge " +
                                 std::to_string(e.a) + "-" + std::to_string(e.b));
        }
        pairs.emplace_back(ia, ib);
        lens.push_back(e.len);
    }
    g.edge_count_ = pairs.size();

    // CSR, arcs sorted by target for binary-search adjacency.
    std::vector<std::size_t> degree(n, 0);
    for (auto [a, b] : pairs) {
        degree[a]++;
        degree[b]++;
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.arcs_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [a, b] = pairs[k];
        g.arcs_[cursor[a]++] = Arc{b, lens[k]};
        g.arcs_[cursor[b]++] = Arc{a, lens[k]};
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                  g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]),
                  [](const Arc& x, const Arc& y) { return x.to < y.to; });
    }

    // Connectivity.
    std::vector<std::uint8_t> visited(n, 0);
    std::queue<std::uint32_t> q;
    q.push(0);
    visited[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        std::uint32_t v = q.front();
        q.pop();
        for (const Arc& a : g.arcs(v)) {
            if (!visited[a.to]) {
                visited[a.to] = 1;
                ++reached;
                q.push(a.to);
            }
        }
    }
    if (reached != n) throw InputError("graph is not connected");

    return g;
}

bool SpaceGraph::has_vertex(VertexId id) const {
    if (contiguous_ids_) return id < ids_.size();
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::uint32_t SpaceGraph::index_of(VertexId id) const {
    if (contiguous_ids_) {
        if (id < ids_.size()) return id;
        throw InputError("unknown vertex " + std::to_string(id));
    }
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) throw InputError("unknown vertex " + std::to_string(id));
    return static_cast<std::uint32_t>(it - ids_.begin());
}

double SpaceGraph::edge_length(std::uint32_t from, std::uint32_t to) const {
    auto span = arcs(from);
    auto it = std::lower_bound(span.begin(), span.end(), to,
                               [](const Arc& a, std::uint32_t t) { return a.to < t; });
    if (it == span.end() || it->to != to)
        throw InputError("vertices " + std::to_string(ids_[from]) + " and " +
                         std::to_string(ids_[to]) + " are not adjacent");
    return it->len;
}

} // namespace qgeo
