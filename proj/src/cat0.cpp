#include "qgeo/cat0.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "qgeo/errors.hpp"
#include "qgeo/rng.hpp"

namespace qgeo {

namespace {

void require_shortest(const SpaceGraph& g, const PathInSpace& p, const char* what) {
    double d = shortest_distance(g, p.front(), p.back());
    if (std::abs(d - p.length()) > 1e-9 * (1.0 + p.length()))
        throw PreconditionError(std::string(what) + " must be a shortest path");
}

// Seeded vertex whose distance from `field`'s source lies in [lo, hi].
std::uint32_t pick_in_window(const std::vector<double>& field, double lo, double hi, Rng& rng) {
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t v = 0; v < field.size(); ++v)
        if (field[v] >= lo && field[v] <= hi) candidates.push_back(v);
    if (candidates.empty()) return PathField::npos;
    return candidates[rng.below(candidates.size())];
}

} // namespace

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j;
    j["kind"] = "check";
    j["name"] = name;
    j["samples"] = samples;
    j["worst_violation"] = worst_violation;
    j["worst_witness"] = worst_witness;
    j["tolerance_used"] = tolerance_used;
    j["conclusive"] = conclusive;
    j["passed"] = passed();
    if (!note.empty()) j["note"] = note;
    return j;
}

const TolProfile& tolerance_profile(const std::string& family) {
    // Multipliers come from the committed calibration sweep
    // (tests/fixtures/tolerance_sweep.json); they cover measured stencil
    // distortion with roughly 2x headroom and nothing more.
    static const std::vector<TolProfile> profiles = {
        {"default", 6.0, 3.0, 4.0, 10.0, 120.0, 0.01, 0.2, 4.0},
        {"euclidean_plane", 6.0, 3.0, 4.0, 10.0, 120.0, 0.01, 0.2, 4.0},
        {"plane_wedge", 6.0, 3.0, 4.0, 10.0, 120.0, 0.01, 0.2, 4.0},
        {"hyperbolic_plane", 8.0, 8.0, 6.0, 10.0, 80.0, 0.01, 0.2, 4.0},
        {"strip_glued_hyperbolic", 8.0, 8.0, 6.0, 10.0, 80.0, 0.01, 0.2, 4.0},
        {"regular_tree", 4.0, 3.0, 3.0, 10.0, 120.0, 0.0, 0.0, 0.5},
        {"tree_cross_line", 6.0, 4.0, 4.0, 10.0, 120.0, 0.01, 0.2, 4.0},
    };
    for (const TolProfile& p : profiles)
        if (p.name == family) return p;
    return profiles.front();
}

CheckReport comparison_triangle_check(const SpaceGraph& g, std::size_t triangle_samples,
                                      std::size_t interior_samples, double tol,
                                      std::uint64_t seed) {
    if (triangle_samples < 1 || interior_samples < 1)
        throw InputError("sample counts must be >= 1");
    const TolProfile& prof = tolerance_profile(g.family());
    const double h = g.scale();
    const double lo = prof.window_min_mult * h;
    const double hi = prof.window_max_mult * h;

    CheckReport report;
    report.name = "comparison_triangle";
    report.tolerance_used = tol;
    Rng rng = Rng(seed).derive("comparison");

    std::size_t done = 0, skipped = 0, attempts = 0;
    const std::size_t max_attempts = triangle_samples * 20;
    while (done < triangle_samples && attempts < max_attempts) {
        ++attempts;
        std::uint32_t ip = static_cast<std::uint32_t>(rng.below(g.vertex_count()));
        std::vector<double> from_p = distance_field(g, ip);
        std::uint32_t iq = pick_in_window(from_p, lo, hi, rng);
        if (iq == PathField::npos) continue;
        std::vector<double> from_q = distance_field(g, iq);
        std::vector<std::uint32_t> candidates;
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
            if (from_p[v] >= lo && from_p[v] <= hi && from_q[v] >= lo && from_q[v] <= hi)
                candidates.push_back(v);
        if (candidates.empty()) continue;
        std::uint32_t ir = candidates[rng.below(candidates.size())];

        const double side_qr = from_q[ir];
        const double side_pq = from_p[iq];
        const double side_pr = from_p[ir];
        // Near-collinear triples make the comparison map ill-conditioned and
        // the inequality vacuous; skip, don't fail.
        if (side_pq + side_qr - side_pr <= tol || side_pq + side_pr - side_qr <= tol ||
            side_qr + side_pr - side_pq <= tol) {
            ++skipped;
            continue;
        }

        PathInSpace geo = shortest_path(g, g.id_of(iq), g.id_of(ir));
        // Comparison triangle: q at the origin, r on the axis, p above.
        double px = (side_pq * side_pq + side_qr * side_qr - side_pr * side_pr) / (2.0 * side_qr);
        double py = std::sqrt(std::max(0.0, side_pq * side_pq - px * px));
        for (std::size_t k = 1; k <= interior_samples; ++k) {
            double s = geo.length() * static_cast<double>(k) /
                       static_cast<double>(interior_samples + 1);
            std::size_t pos = geo.position_at_arclength(s);
            double s_m = geo.arclength(pos);  // the vertex's true arclength
            std::uint32_t im = g.index_of(geo.vertex(pos));
            double comparison = std::hypot(px - s_m, py);
            double excess = from_p[im] - comparison;
            if (excess > report.worst_violation) {
                report.worst_violation = excess;
                report.worst_witness = {
                    {"p", g.id_of(ip)},       {"q", g.id_of(iq)},  {"r", g.id_of(ir)},
                    {"m", geo.vertex(pos)},   {"d_pm", from_p[im]}, {"comparison", comparison},
                    {"side_pq", side_pq},     {"side_qr", side_qr}, {"side_pr", side_pr},
                };
            }
        }
        ++done;
    }
    report.samples = done;
    if (skipped > 0) report.note = std::to_string(skipped) + " degenerate triples skipped";
    if (done == 0) {
        report.conclusive = false;
        report.note = "no sampleable triangles in the distance window";
    }
    return report;
}

CheckReport convexity_check(const SpaceGraph& g, const PathInSpace& path1,
                            const PathInSpace& path2, std::size_t t_samples, double tol) {
    if (t_samples < 2) throw InputError("t_samples must be >= 2");
    require_shortest(g, path1, "convexity input path1");
    require_shortest(g, path2, "convexity input path2");

    CheckReport report;
    report.name = "convexity";
    report.tolerance_used = tol;
    const double end0 = shortest_distance(g, path1.front(), path2.front());
    const double end1 = shortest_distance(g, path1.back(), path2.back());
    for (std::size_t k = 0; k < t_samples; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(t_samples - 1);
        VertexId a = path1.vertex_at_arclength(t * path1.length());
        VertexId b = path2.vertex_at_arclength(t * path2.length());
        double psi = shortest_distance(g, a, b);
        double bound = (1.0 - t) * end0 + t * end1;
        double excess = psi - bound;
        if (excess > report.worst_violation) {
            report.worst_violation = excess;
            report.worst_witness = {{"t", t}, {"c1_t", a}, {"c2_t", b},
                                    {"psi", psi}, {"bound", bound}};
        }
    }
    report.samples = t_samples;
    return report;
}

Projection nearest_point_projection(const SpaceGraph& g, VertexId x, const PathInSpace& p) {
    if (p.size() == 0) throw InputError("projection target path is empty");
    std::uint32_t ix = g.index_of(x);
    std::vector<std::uint32_t> targets;
    targets.reserve(p.size());
    for (VertexId id : p.vertices()) targets.push_back(g.index_of(id));
    std::vector<double> d = distances_to_targets(g, ix, targets);
    // Exact argmin; earlier arclength position wins ties.
    double best = kInfDistance;
    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < p.size(); ++pos) {
        if (d[pos] < best) {
            best = d[pos];
            best_pos = pos;
        }
    }
    return Projection{p.vertex(best_pos), best, best_pos};
}

CheckReport projection_nonexpansive_check(const SpaceGraph& g, const PathInSpace& p,
                                          std::size_t pair_samples, double tol,
                                          std::uint64_t seed) {
    if (pair_samples < 1) throw InputError("pair_samples must be >= 1");
    require_shortest(g, p, "projection target");
    PathField field = distance_to_path(g, p);

    CheckReport report;
    report.name = "projection_nonexpansive";
    report.tolerance_used = tol;
    Rng rng = Rng(seed).derive("nonexpansive");
    const double h = g.scale();

    std::size_t done = 0;
    for (std::size_t k = 0; k < pair_samples; ++k) {
        std::uint32_t ix = static_cast<std::uint32_t>(rng.below(g.vertex_count()));
        double rad = rng.in_range(h, 8.0 * h);
        auto ball = ball_around(g, ix, rad);
        if (ball.size() < 2) continue;
        auto [iy, d_xy] = ball[rng.below(ball.size())];
        if (iy == ix) continue;
        double arc_x = p.arclength(field.owner_pos[ix]);
        double arc_y = p.arclength(field.owner_pos[iy]);
        double excess = std::abs(arc_x - arc_y) - d_xy;
        ++done;
        if (excess > report.worst_violation) {
            report.worst_violation = excess;
            report.worst_witness = {{"x", g.id_of(ix)},
                                    {"y", g.id_of(iy)},
                                    {"proj_x", p.vertex(field.owner_pos[ix])},
                                    {"proj_y", p.vertex(field.owner_pos[iy])},
                                    {"d_xy", d_xy},
                                    {"proj_separation", std::abs(arc_x - arc_y)}};
        }
    }
    report.samples = done;
    return report;
}

namespace {

// Remove cycles from a walk in place (keep the last pass through any repeat).
std::vector<VertexId> simplify_walk(const std::vector<VertexId>& walk) {
    std::vector<VertexId> out;
    std::unordered_map<VertexId, std::size_t> last_at;
    for (VertexId v : walk) {
        auto it = last_at.find(v);
        if (it != last_at.end()) {
            while (out.size() > it->second + 1) {
                last_at.erase(out.back());
                out.pop_back();
            }
        } else {
            out.push_back(v);
            last_at[v] = out.size() - 1;
        }
    }
    return out;
}

} // namespace

CheckReport geodesic_uniqueness_check(const SpaceGraph& g, std::size_t pair_samples,
                                      double slack, double tube_rel, double tube_abs,
                                      std::uint64_t seed) {
    if (slack < 0.0) throw InputError("slack must be nonnegative");
    const TolProfile& prof = tolerance_profile(g.family());
    const double h = g.scale();
    const double lo = prof.window_min_mult * h;
    const double hi = prof.window_max_mult * h;

    CheckReport report;
    report.name = "geodesic_uniqueness";
    report.tolerance_used = 0.0;  // the tube is folded into the violation
    Rng rng = Rng(seed).derive("uniqueness");
    constexpr std::size_t kWitnessAttemptCap = 10'000;

    std::size_t done = 0;
    bool any_unresolved = false;
    for (std::size_t k = 0; k < pair_samples; ++k) {
        std::uint32_t iu = static_cast<std::uint32_t>(rng.below(g.vertex_count()));
        std::vector<double> du = distance_field(g, iu);
        std::uint32_t iv = pick_in_window(du, lo, hi, rng);
        if (iv == PathField::npos) continue;
        std::vector<double> dv = distance_field(g, iv);
        const double d = du[iv];
        const double bound = (1.0 + slack) * d * (1.0 + 1e-12);
        const double tube = tube_rel * d + tube_abs;

        PathInSpace geo = shortest_path(g, g.id_of(iu), g.id_of(iv));
        PathField to_geo = distance_to_path(g, geo);

        // Every near-optimal u-v walk stays inside the "lens"
        // {w : du(w) + dv(w) <= bound}; if the whole lens sits inside the
        // tube, all such walks do.
        std::vector<std::uint32_t> offenders;
        double worst_pass = -kInfDistance;
        for (std::uint32_t w = 0; w < g.vertex_count(); ++w) {
            if (du[w] + dv[w] > bound) continue;
            double wander = to_geo.dist[w] - tube;
            worst_pass = std::max(worst_pass, wander);
            if (wander > 0.0) offenders.push_back(w);
        }
        ++done;
        if (offenders.empty()) {
            if (worst_pass > report.worst_violation) {
                report.worst_violation = worst_pass;
                report.worst_witness = {{"u", g.id_of(iu)}, {"v", g.id_of(iv)},
                                        {"tube", tube}, {"max_wander", worst_pass + tube}};
            }
            continue;
        }
        // A failure must come with a realizable witness: a near-optimal simple
        // path through an offending vertex that still exits the tube.
        std::sort(offenders.begin(), offenders.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (to_geo.dist[a] != to_geo.dist[b]) return to_geo.dist[a] > to_geo.dist[b];
            return a < b;
        });
        bool found = false;
        std::size_t tried = 0;
        for (std::uint32_t w : offenders) {
            if (++tried > kWitnessAttemptCap) break;
            std::vector<VertexId> walk;
            {
                // u -> w against the field from u, then w -> v against the
                // field from v.
                std::vector<VertexId> wu;
                std::uint32_t cur = w;
                wu.push_back(g.id_of(cur));
                while (cur != iu) {
                    const double here = du[cur];
                    double eps = 1e-12 * std::max(1.0, here);
                    std::uint32_t best = PathField::npos;
                    for (const Arc& a : g.arcs(cur)) {
                        if (du[a.to] < here && std::abs(du[a.to] + a.len - here) <= eps) {
                            best = a.to;
                            break;
                        }
                    }
                    if (best == PathField::npos) break;
                    cur = best;
                    wu.push_back(g.id_of(cur));
                }
                if (cur != iu) continue;
                walk.assign(wu.rbegin(), wu.rend());
                cur = w;
                while (cur != iv) {
                    const double here = dv[cur];
                    double eps = 1e-12 * std::max(1.0, here);
                    std::uint32_t best = PathField::npos;
                    for (const Arc& a : g.arcs(cur)) {
                        if (dv[a.to] < here && std::abs(dv[a.to] + a.len - here) <= eps) {
                            best = a.to;
                            break;
                        }
                    }
                    if (best == PathField::npos) break;
                    cur = best;
                    walk.push_back(g.id_of(cur));
                }
                if (cur != iv) continue;
            }
            std::vector<VertexId> simple = simplify_walk(walk);
            PathInSpace candidate = PathInSpace::from_vertices(g, simple);
            if (candidate.length() > bound) continue;
            double wander = 0.0;
            for (VertexId id : simple) wander = std::max(wander, to_geo.dist[g.index_of(id)]);
            if (wander <= tube) continue;
            found = true;
            if (wander - tube > report.worst_violation) {
                report.worst_violation = wander - tube;
                report.worst_witness = {{"u", g.id_of(iu)},           {"v", g.id_of(iv)},
                                        {"through", g.id_of(w)},      {"tube", tube},
                                        {"wander", wander},           {"walk_length", candidate.length()},
                                        {"geodesic_length", d},       {"walk_vertices", simple.size()}};
            }
            break;
        }
        if (!found) any_unresolved = true;
    }
    report.samples = done;
    if (done == 0) {
        report.conclusive = false;
        report.note = "no sampleable pairs in the distance window";
    } else if (any_unresolved && report.worst_violation <= 0.0) {
        report.conclusive = false;
        report.note = "offending vertices found but no witness path survived the attempt cap";
    }
    return report;
}

// --- suite ---------------------------------------------------------------------

std::vector<CheckReport> run_cat0_suite(const SpaceGraph& g, const PathInSpace* base,
                                        const Cat0SuiteOptions& opt, const TolProfile& tol) {
    const double h = g.scale();
    Rng rng(opt.seed);

    PathInSpace projection_target = [&]() {
        if (base) return *base;
        Rng r = rng.derive("suite-path");
        std::uint32_t iu = static_cast<std::uint32_t>(r.below(g.vertex_count()));
        std::vector<double> du = distance_field(g, iu);
        std::uint32_t best = 0;
        for (std::uint32_t v = 1; v < g.vertex_count(); ++v)
            if (du[v] > du[best] && du[v] != kInfDistance) best = v;
        return shortest_path(g, g.id_of(iu), g.id_of(best));
    }();

    std::vector<CheckReport> reports;
    reports.push_back(comparison_triangle_check(g, opt.triangle_samples, opt.interior_samples,
                                                tol.comparison_mult * h, opt.seed));

    // Convexity aggregates over sampled geodesic pairs, both orientations.
    CheckReport convexity;
    convexity.name = "convexity";
    convexity.tolerance_used = tol.convexity_mult * h;
    Rng crng = rng.derive("suite-convexity");
    const double lo = tol.window_min_mult * h;
    const double hi = tol.window_max_mult * h;
    std::size_t pairs_done = 0;
    for (std::size_t k = 0; k < opt.convexity_pairs; ++k) {
        std::uint32_t a1 = static_cast<std::uint32_t>(crng.below(g.vertex_count()));
        std::vector<double> f1 = distance_field(g, a1);
        std::uint32_t b1 = pick_in_window(f1, lo, hi, crng);
        std::uint32_t a2 = static_cast<std::uint32_t>(crng.below(g.vertex_count()));
        std::vector<double> f2 = distance_field(g, a2);
        std::uint32_t b2 = pick_in_window(f2, lo, hi, crng);
        if (b1 == PathField::npos || b2 == PathField::npos) continue;
        PathInSpace c1 = shortest_path(g, g.id_of(a1), g.id_of(b1));
        PathInSpace c2 = shortest_path(g, g.id_of(a2), g.id_of(b2));
        for (int orientation = 0; orientation < 2; ++orientation) {
            PathInSpace c2o = orientation == 0 ? c2 : c2.reversed(g);
            CheckReport one = convexity_check(g, c1, c2o, opt.t_samples, convexity.tolerance_used);
            convexity.samples += one.samples;
            if (one.worst_violation > convexity.worst_violation) {
                convexity.worst_violation = one.worst_violation;
                convexity.worst_witness = one.worst_witness;
                convexity.worst_witness["c1"] = {{"from", g.id_of(a1)}, {"to", g.id_of(b1)}};
                convexity.worst_witness["c2"] = {{"from", g.id_of(a2)}, {"to", g.id_of(b2)},
                                                 {"reversed", orientation == 1}};
            }
        }
        ++pairs_done;
    }
    if (pairs_done == 0) {
        convexity.conclusive = false;
        convexity.note = "no sampleable geodesic pairs";
    }
    reports.push_back(std::move(convexity));

    reports.push_back(projection_nonexpansive_check(g, projection_target, opt.projection_pairs,
                                                    tol.projection_mult * h, opt.seed));
    if (opt.run_uniqueness) {
        reports.push_back(geodesic_uniqueness_check(g, opt.uniqueness_pairs, tol.uniqueness_slack,
                                                    tol.uniqueness_tube_rel,
                                                    tol.uniqueness_tube_abs_mult * h, opt.seed));
    }
    return reports;
}

SpaceGraph build_cycle_negative_control(int n) {
    if (n < 4) throw InputError("cycle needs at least 4 vertices");
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < n; ++i) {
        vertices.push_back({static_cast<VertexId>(i), false, 0.0, 0.0});
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n), 1.0});
    }
    return SpaceGraph::build("cycle_negative_control", 1.0, std::move(vertices), edges);
}

} // namespace qgeo
