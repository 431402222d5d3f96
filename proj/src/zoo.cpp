#include "qgeo/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgeo/errors.hpp"
#include "qgeo/metric.hpp"

namespace qgeo {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance in the ds^2 = dr^2 + sinh^2(r) dtheta^2 model, stable for nearby
// points: cosh d - 1 = 2 sinh^2((r1-r2)/2) + sinh r1 sinh r2 (1 - cos dtheta).
double hyperbolic_point_distance(double r1, double r2, double dtheta) {
    double sh = std::sinh(0.5 * (r1 - r2));
    double s = std::sin(0.5 * dtheta);
    double t = 2.0 * sh * sh + std::sinh(r1) * std::sinh(r2) * 2.0 * s * s;
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

void check_budget(std::size_t vertices, std::size_t budget, const char* family) {
    if (vertices > budget)
        throw BudgetError(std::string(family) + " would need " + std::to_string(vertices) +
                          " vertices, over the budget of " + std::to_string(budget));
}

// 16-neighbor stencil: each unordered lattice pair emitted exactly once.
struct Offset {
    int di, dj;
};
constexpr Offset kStencil[8] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {2, -1}, {1, 2}, {1, -2}};

template <typename IdFn>
void add_lattice_edges(int i_min, int i_max, int j_min, int j_max, double h, IdFn&& id_of,
                       std::vector<EdgeSpec>& edges) {
    for (int i = i_min; i <= i_max; ++i) {
        for (int j = j_min; j <= j_max; ++j) {
            for (const Offset& o : kStencil) {
                int i2 = i + o.di, j2 = j + o.dj;
                if (i2 < i_min || i2 > i_max || j2 < j_min || j2 > j_max) continue;
                edges.push_back({id_of(i, j), id_of(i2, j2),
                                 h * std::hypot(static_cast<double>(o.di),
                                                static_cast<double>(o.dj))});
            }
        }
    }
}

void verify_base_path(const SpaceGraph& g, const PathInSpace& p, const char* family) {
    double d = shortest_distance(g, p.front(), p.back());
    if (std::abs(d - p.length()) > 1e-9 * (1.0 + p.length()))
        throw Error(std::string(family) + ": designated base path is not a shortest path");
}

ZooEntry finish_entry(SpaceGraph graph, std::vector<VertexId> base_vertices,
                      ExpectedClassification expected, const char* family) {
    PathInSpace base = PathInSpace::from_vertices(graph, std::move(base_vertices));
    verify_base_path(graph, base, family);
    return ZooEntry{std::move(graph), std::move(base), expected};
}

// --- hyperbolic polar grid (shared by two builders) --------------------------

struct PolarGrid {
    int rings = 0;       // ring k at radius k*h, k = 1..rings
    std::size_t n = 0;   // angular positions, shared by every ring
    double h = 0.0;
    std::vector<VertexSpec> vertices;  // center id 0, ring k vertex j at 1+(k-1)*n+j
    std::vector<EdgeSpec> edges;

    VertexId vertex_id(int k, std::size_t j) const {
        return static_cast<VertexId>(1 + static_cast<std::size_t>(k - 1) * n + (j % n));
    }
};

PolarGrid build_polar_grid(double max_r, double h, std::size_t budget, const char* family) {
    if (!(h > 0.0)) throw InputError("h must be positive");
    if (max_r < 5.0) throw InputError("max_r must be at least 5");
    PolarGrid grid;
    grid.h = h;
    grid.rings = static_cast<int>(std::llround(max_r / h));
    if (grid.rings < 2) throw InputError("max_r must span at least two rings");

    // One angular grid for all rings, fine enough that the outermost ring's
    // arcs stay below 2h. Sharing positions across rings keeps the graph
    // distance from the center to ring k exactly k*h (pure radial chains),
    // which is what the puncture semantics relies on.
    double needed = kPi * std::sinh(max_r) / (4.0 * h);
    grid.n = 4 * static_cast<std::size_t>(std::ceil(needed));
    check_budget(1 + static_cast<std::size_t>(grid.rings) * grid.n, budget, family);

    grid.vertices.push_back({0, false, 0.0, 0.0});
    for (int k = 1; k <= grid.rings; ++k)
        for (std::size_t j = 0; j < grid.n; ++j)
            grid.vertices.push_back({grid.vertex_id(k, j), false, 0.0, 0.0});

    const double dtheta = 2.0 * kPi / static_cast<double>(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j)
        grid.edges.push_back({0, grid.vertex_id(1, j), h});
    for (int k = 1; k <= grid.rings; ++k) {
        const double r = k * h;
        const double arc = std::sinh(r) * dtheta;
        for (std::size_t j = 0; j < grid.n; ++j)
            grid.edges.push_back({grid.vertex_id(k, j), grid.vertex_id(k, j + 1), arc});
        if (k == grid.rings) continue;
        // Ring-to-ring diagonals aiming at ~45 degrees; without them the grid
        // metric is an l1-style polar taxicab and comparison triangles come
        // out far too fat.
        double mid_arc = std::sinh((k + 0.5) * h) * dtheta;
        std::size_t m = static_cast<std::size_t>(std::max<long long>(1, std::llround(h / mid_arc)));
        m = std::min(m, grid.n / 4);
        double diag = hyperbolic_point_distance(r, r + h, static_cast<double>(m) * dtheta);
        for (std::size_t j = 0; j < grid.n; ++j) {
            grid.edges.push_back({grid.vertex_id(k, j), grid.vertex_id(k + 1, j), h});
            grid.edges.push_back({grid.vertex_id(k, j), grid.vertex_id(k + 1, j + m), diag});
            grid.edges.push_back({grid.vertex_id(k, j), grid.vertex_id(k + 1, (j + grid.n) - m), diag});
        }
    }
    return grid;
}

std::vector<VertexId> polar_diameter(const PolarGrid& grid) {
    std::vector<VertexId> seq;
    for (int k = grid.rings; k >= 1; --k) seq.push_back(grid.vertex_id(k, grid.n / 2));
    seq.push_back(0);
    for (int k = 1; k <= grid.rings; ++k) seq.push_back(grid.vertex_id(k, 0));
    return seq;
}

// --- regular tree (shared) ----------------------------------------------------

struct TreeShape {
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    std::vector<std::vector<VertexId>> children;
    std::vector<VertexId> diameter;  // first leaf of subtree 0 .. root .. first leaf of subtree 1
};

TreeShape build_tree_shape(int degree, int depth, std::size_t budget, const char* family) {
    if (degree < 3) throw InputError("degree must be at least 3");
    if (depth < 4) throw InputError("depth must be at least 4");
    double count = 1.0;
    double level = 1.0;
    for (int d = 0; d < depth; ++d) {
        level *= (d == 0 ? degree : degree - 1);
        count += level;
        if (count > static_cast<double>(budget) * 1.5) break;
    }
    check_budget(static_cast<std::size_t>(count), budget, family);

    TreeShape t;
    t.vertices.push_back({0, false, 0.0, 0.0});
    t.children.emplace_back();
    std::vector<VertexId> frontier{0};
    VertexId next = 1;
    for (int d = 0; d < depth; ++d) {
        std::vector<VertexId> next_frontier;
        for (VertexId parent : frontier) {
            int kids = (parent == 0) ? degree : degree - 1;
            for (int c = 0; c < kids; ++c) {
                VertexId id = next++;
                t.vertices.push_back({id, false, 0.0, 0.0});
                t.children.emplace_back();
                t.children[parent].push_back(id);
                t.edges.push_back({parent, id, 1.0});
                next_frontier.push_back(id);
            }
        }
        frontier = std::move(next_frontier);
    }

    auto first_leaf_below = [&](VertexId v) {
        while (!t.children[v].empty()) v = t.children[v].front();
        return v;
    };
    VertexId leaf_a = first_leaf_below(t.children[0][0]);
    VertexId leaf_b = first_leaf_below(t.children[0][1]);
    // Walk up from leaf_a to the root, then down to leaf_b.
    std::vector<VertexId> parent(t.vertices.size(), 0);
    for (const EdgeSpec& e : t.edges) parent[e.b] = e.a;
    std::vector<VertexId> up;
    for (VertexId v = leaf_a; v != 0; v = parent[v]) up.push_back(v);
    up.push_back(0);
    std::vector<VertexId> down;
    for (VertexId v = leaf_b; v != 0; v = parent[v]) down.push_back(v);
    t.diameter = up;
    for (auto it = down.rbegin(); it != down.rend(); ++it) t.diameter.push_back(*it);
    return t;
}

} // namespace

// --- builders ---------------------------------------------------------------

ZooEntry build_euclidean_plane(double halfwidth, double h, std::size_t budget) {
    if (!(h > 0.0)) throw InputError("h must be positive");
    if (halfwidth < 20.0 * h) throw InputError("halfwidth must be at least 20h");
    const int n = static_cast<int>(std::llround(halfwidth / h));
    const std::size_t side = 2 * static_cast<std::size_t>(n) + 1;
    check_budget(side * side, budget, "euclidean_plane");

    auto id_of = [&](int i, int j) {
        return static_cast<VertexId>((static_cast<std::size_t>(i + n)) * side +
                                     static_cast<std::size_t>(j + n));
    };
    std::vector<VertexSpec> vertices;
    vertices.reserve(side * side);
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) vertices.push_back({id_of(i, j), true, i * h, j * h});
    std::vector<EdgeSpec> edges;
    edges.reserve(side * side * 8);
    add_lattice_edges(-n, n, -n, n, h, id_of, edges);

    SpaceGraph g = SpaceGraph::build("euclidean_plane", h, std::move(vertices), edges);
    std::vector<VertexId> axis;
    for (int i = -n; i <= n; ++i) axis.push_back(id_of(i, 0));
    return finish_entry(std::move(g), std::move(axis),
                        {false, false, DivergenceClass::Linear}, "euclidean_plane");
}

ZooEntry build_hyperbolic_plane(double max_r, double h, std::size_t budget) {
    PolarGrid grid = build_polar_grid(max_r, h, budget, "hyperbolic_plane");
    SpaceGraph g = SpaceGraph::build("hyperbolic_plane", h, std::move(grid.vertices), grid.edges);
    return finish_entry(std::move(g), polar_diameter(grid),
                        {true, true, DivergenceClass::AtLeastQuadratic}, "hyperbolic_plane");
}

ZooEntry build_regular_tree(int degree, int depth, std::size_t budget) {
    TreeShape t = build_tree_shape(degree, depth, budget, "regular_tree");
    SpaceGraph g = SpaceGraph::build("regular_tree", 1.0, std::move(t.vertices), t.edges);
    return finish_entry(std::move(g), std::move(t.diameter),
                        {true, true, DivergenceClass::Infinite}, "regular_tree");
}

ZooEntry build_plane_wedge(double halfwidth, double h, std::size_t budget) {
    if (!(h > 0.0)) throw InputError("h must be positive");
    if (halfwidth < 20.0 * h) throw InputError("halfwidth must be at least 20h");
    const int n = static_cast<int>(std::llround(halfwidth / h));
    const std::size_t side = 2 * static_cast<std::size_t>(n) + 1;
    const std::size_t plane = side * side;
    check_budget(2 * plane - 1, budget, "plane_wedge");

    auto a_id = [&](int i, int j) {
        return static_cast<VertexId>((static_cast<std::size_t>(i + n)) * side +
                                     static_cast<std::size_t>(j + n));
    };
    const VertexId origin = a_id(0, 0);
    auto b_id = [&](int i, int j) -> VertexId {
        if (i == 0 && j == 0) return origin;  // the single shared vertex
        VertexId raw = a_id(i, j);
        return static_cast<VertexId>(plane) + raw - (raw > origin ? 1 : 0);
    };

    std::vector<VertexSpec> vertices;
    vertices.reserve(2 * plane - 1);
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) vertices.push_back({a_id(i, j), true, i * h, j * h});
    // Sheet B, reflected through the origin so both sheets remain honestly
    // embedded edge by edge.
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) {
            if (i == 0 && j == 0) continue;
            vertices.push_back({b_id(i, j), true, -i * h, -j * h});
        }

    std::vector<EdgeSpec> edges;
    edges.reserve(2 * plane * 8);
    add_lattice_edges(-n, n, -n, n, h, a_id, edges);
    add_lattice_edges(-n, n, -n, n, h, b_id, edges);

    SpaceGraph g = SpaceGraph::build("plane_wedge", h, std::move(vertices), edges);
    std::vector<VertexId> base;
    for (int i = -n; i <= 0; ++i) base.push_back(a_id(i, 0));
    for (int i = 1; i <= n; ++i) base.push_back(b_id(i, 0));
    return finish_entry(std::move(g), std::move(base),
                        {false, false, DivergenceClass::Infinite}, "plane_wedge");
}

ZooEntry build_strip_glued_hyperbolic(double max_r, double strip_halfwidth, double h,
                                      std::size_t budget) {
    if (!(strip_halfwidth > 0.0)) throw InputError("strip_halfwidth must be positive");
    PolarGrid grid = build_polar_grid(max_r, h, budget, "strip_glued_hyperbolic");
    const int cols = grid.rings;  // seam columns -cols..cols
    const int rows = static_cast<int>(std::llround(strip_halfwidth / h));
    if (rows < 2) throw InputError("strip_halfwidth must span at least two rows");
    const std::size_t hyp_count = 1 + static_cast<std::size_t>(grid.rings) * grid.n;
    const std::size_t strip_count = static_cast<std::size_t>(rows) * (2 * cols + 1);
    check_budget(hyp_count + strip_count, budget, "strip_glued_hyperbolic");

    // Row 0 of the strip is the hyperbolic diameter itself: column q at signed
    // radius q*h maps onto the theta=0 (q>0) / theta=pi (q<0) spokes.
    auto seam_id = [&](int q) -> VertexId {
        if (q == 0) return 0;
        if (q > 0) return grid.vertex_id(q, 0);
        return grid.vertex_id(-q, grid.n / 2);
    };
    auto cell_id = [&](int q, int m) -> VertexId {
        if (m == 0) return seam_id(q);
        return static_cast<VertexId>(hyp_count +
                                     static_cast<std::size_t>(m - 1) * (2 * cols + 1) +
                                     static_cast<std::size_t>(q + cols));
    };

    std::vector<VertexSpec> vertices = std::move(grid.vertices);
    for (int m = 1; m <= rows; ++m)
        for (int q = -cols; q <= cols; ++q) vertices.push_back({cell_id(q, m), false, 0.0, 0.0});

    std::vector<EdgeSpec> edges = std::move(grid.edges);
    add_lattice_edges(-cols, cols, 0, rows, h,
                      [&](int q, int m) { return cell_id(q, m); }, edges);

    SpaceGraph g = SpaceGraph::build("strip_glued_hyperbolic", h, std::move(vertices), edges);
    return finish_entry(std::move(g), polar_diameter(grid),
                        {false, false, DivergenceClass::Linear}, "strip_glued_hyperbolic");
}

ZooEntry build_tree_cross_line(int degree, int depth, double halfwidth, double h,
                               std::size_t budget) {
    if (!(h > 0.0)) throw InputError("h must be positive");
    if (halfwidth < 4.0 * h) throw InputError("halfwidth must be at least 4h");
    TreeShape t = build_tree_shape(degree, depth, budget, "tree_cross_line");
    const std::size_t tree_count = t.vertices.size();
    const int m = static_cast<int>(std::llround(halfwidth / h));
    const std::size_t line = 2 * static_cast<std::size_t>(m) + 1;
    check_budget(tree_count * line, budget, "tree_cross_line");

    auto pid = [&](VertexId tv, int q) {
        return static_cast<VertexId>(static_cast<std::size_t>(tv) * line +
                                     static_cast<std::size_t>(q + m));
    };

    std::vector<VertexSpec> vertices;
    vertices.reserve(tree_count * line);
    for (std::size_t tv = 0; tv < tree_count; ++tv)
        for (int q = -m; q <= m; ++q)
            vertices.push_back({pid(static_cast<VertexId>(tv), q), false, 0.0, 0.0});

    // tree-distance-2 pairs: grandparent/grandchild and sibling/sibling
    std::vector<std::pair<VertexId, VertexId>> dist2;
    for (std::size_t v = 0; v < tree_count; ++v) {
        const auto& kids = t.children[v];
        for (std::size_t a = 0; a < kids.size(); ++a) {
            for (std::size_t b = a + 1; b < kids.size(); ++b) dist2.emplace_back(kids[a], kids[b]);
            for (VertexId gk : t.children[kids[a]]) dist2.emplace_back(static_cast<VertexId>(v), gk);
        }
    }

    const double w11 = std::hypot(1.0, h);
    const double w12 = std::hypot(1.0, 2.0 * h);
    const double w21 = std::hypot(2.0, h);
    std::vector<EdgeSpec> edges;
    edges.reserve(tree_count * line * 8);
    for (std::size_t tv = 0; tv < tree_count; ++tv) {
        VertexId v = static_cast<VertexId>(tv);
        for (int q = -m; q <= m; ++q) {
            if (q + 1 <= m) edges.push_back({pid(v, q), pid(v, q + 1), h});
        }
    }
    for (const EdgeSpec& e : t.edges) {
        for (int q = -m; q <= m; ++q) {
            edges.push_back({pid(e.a, q), pid(e.b, q), 1.0});
            if (q + 1 <= m) {
                edges.push_back({pid(e.a, q), pid(e.b, q + 1), w11});
                edges.push_back({pid(e.b, q), pid(e.a, q + 1), w11});
            }
            if (q + 2 <= m) {
                edges.push_back({pid(e.a, q), pid(e.b, q + 2), w12});
                edges.push_back({pid(e.b, q), pid(e.a, q + 2), w12});
            }
        }
    }
    for (auto [a, b] : dist2) {
        for (int q = -m; q <= m; ++q) {
            if (q + 1 <= m) {
                edges.push_back({pid(a, q), pid(b, q + 1), w21});
                edges.push_back({pid(b, q), pid(a, q + 1), w21});
            }
        }
    }

    SpaceGraph g = SpaceGraph::build("tree_cross_line", h, std::move(vertices), edges);
    std::vector<VertexId> base;
    for (VertexId tv : t.diameter) base.push_back(pid(tv, 0));
    return finish_entry(std::move(g), std::move(base),
                        {false, false, DivergenceClass::Linear}, "tree_cross_line");
}

// --- registry ----------------------------------------------------------------

const std::vector<ZooFamily>& zoo_families() {
    static const std::vector<ZooFamily> families = {
        {"euclidean_plane",
         "flat square grid, 16-neighbor stencil; base path = x-axis",
         {{"halfwidth", 120.0, "half side length"}, {"h", 1.0, "grid pitch"}}},
        {"hyperbolic_plane",
         "polar grid for ds^2 = dr^2 + sinh^2 r dtheta^2; base path = a diameter",
         {{"max_r", 7.0, "outer radius"}, {"h", 0.25, "radial pitch"}}},
        {"regular_tree",
         "rooted regular tree, unit edges; base path = leaf-to-leaf diameter",
         {{"degree", 3.0, "root degree (>= 3)"}, {"depth", 12.0, "levels below the root"}}},
        {"plane_wedge",
         "two flat grids sharing exactly one vertex; base path runs through the wedge",
         {{"halfwidth", 120.0, "half side length per sheet"}, {"h", 1.0, "grid pitch"}}},
        {"strip_glued_hyperbolic",
         "hyperbolic grid glued along its diameter to a flat strip; base path = the seam",
         {{"max_r", 7.0, "hyperbolic outer radius"},
          {"strip_halfwidth", 8.0, "strip width"},
          {"h", 0.25, "pitch"}}},
        {"tree_cross_line",
         "l2-style product of a regular tree and a segment; base path = diameter x {0}",
         {{"degree", 3.0, "tree degree"},
          {"depth", 9.0, "tree depth"},
          {"halfwidth", 12.0, "segment half length"},
          {"h", 1.0, "segment pitch"}}},
    };
    return families;
}

ZooEntry build_zoo_entry(const std::string& family,
                         const std::vector<std::pair<std::string, double>>& params,
                         std::size_t budget) {
    const ZooFamily* fam = nullptr;
    for (const ZooFamily& f : zoo_families())
        if (f.name == family) fam = &f;
    if (!fam) throw InputError("unknown zoo family: " + family);

    for (const auto& [k, v] : params) {
        bool known = false;
        for (const ZooParamSpec& p : fam->params) known |= (p.name == k);
        if (!known) throw InputError("family " + family + " has no parameter '" + k + "'");
    }
    auto value_of = [&](const std::string& name) {
        for (const auto& [k, v] : params)
            if (k == name) return v;
        for (const ZooParamSpec& p : fam->params)
            if (p.name == name) return p.default_value;
        throw InputError("missing parameter " + name);
    };

    if (family == "euclidean_plane")
        return build_euclidean_plane(value_of("halfwidth"), value_of("h"), budget);
    if (family == "hyperbolic_plane")
        return build_hyperbolic_plane(value_of("max_r"), value_of("h"), budget);
    if (family == "regular_tree")
        return build_regular_tree(static_cast<int>(value_of("degree")),
                                  static_cast<int>(value_of("depth")), budget);
    if (family == "plane_wedge")
        return build_plane_wedge(value_of("halfwidth"), value_of("h"), budget);
    if (family == "strip_glued_hyperbolic")
        return build_strip_glued_hyperbolic(value_of("max_r"), value_of("strip_halfwidth"),
                                            value_of("h"), budget);
    return build_tree_cross_line(static_cast<int>(value_of("degree")),
                                 static_cast<int>(value_of("depth")), value_of("halfwidth"),
                                 value_of("h"), budget);
}

} // namespace qgeo
