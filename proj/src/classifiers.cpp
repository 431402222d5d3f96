#include "qgeo/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "qgeo/errors.hpp"
#include "qgeo/rng.hpp"

namespace qgeo {

namespace {

nlohmann::json witness_json(const ContractionWitness& w) {
    return {{"x", w.x},         {"y", w.y},
            {"proj_x", w.px},   {"proj_y", w.py},
            {"d_xy", w.d_xy},   {"d_x_path", w.d_x_path},
            {"displacement", w.displacement}};
}

} // namespace

nlohmann::json ContractionReport::to_json() const {
    nlohmann::json j;
    j["kind"] = "contraction";
    j["b"] = b;
    j["c_hat"] = c_hat;
    j["samples"] = samples;
    j["verdict"] = to_string(verdict);
    if (!note.empty()) j["note"] = note;
    j["tiers"] = nlohmann::json::array();
    for (const ContractionTier& t : tiers) {
        nlohmann::json tj = {{"radius", t.radius},
                             {"c_hat", t.c_hat},
                             {"x_samples", t.x_samples},
                             {"pair_samples", t.pair_samples},
                             {"sampled", t.sampled}};
        if (t.witness) tj["witness"] = witness_json(*t.witness);
        j["tiers"].push_back(tj);
    }
    if (violation) j["violation"] = witness_json(*violation);
    return j;
}

ContractionReport contraction_scan(const SpaceGraph& g, const PathInSpace& path,
                                   const ContractionOptions& opt) {
    if (path.size() == 0) throw InputError("contraction scan needs a nonempty path");
    if (!(opt.b > 0.0 && opt.b <= 1.0)) throw InputError("b must lie in (0, 1]");
    if (opt.radius_ladder.size() < 2) throw InputError("radius ladder needs at least two tiers");
    for (std::size_t i = 1; i < opt.radius_ladder.size(); ++i)
        if (opt.radius_ladder[i] <= opt.radius_ladder[i - 1])
            throw InputError("radius ladder must be strictly increasing");

    const double h = g.scale();
    PathField field = distance_to_path(g, path);
    auto owner_arc = [&](std::uint32_t v) { return path.arclength(field.owner_pos[v]); };

    ContractionReport report;
    report.b = opt.b;
    Rng base_rng(opt.seed);

    const std::size_t per_tier = std::max<std::size_t>(4, opt.budget / opt.radius_ladder.size());
    for (std::size_t tier_idx = 0; tier_idx < opt.radius_ladder.size(); ++tier_idx) {
        ContractionTier tier;
        tier.radius = opt.radius_ladder[tier_idx];
        const double lo = tier.radius * opt.shell_low;
        const double hi = tier.radius * opt.shell_high;

        std::vector<std::uint32_t> shell;
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
            if (field.dist[v] >= lo && field.dist[v] <= hi) shell.push_back(v);
        if (shell.empty()) {
            tier.sampled = false;
            report.tiers.push_back(tier);
            continue;
        }
        tier.sampled = true;

        // Half the tier budget goes to the shell vertices with the largest
        // local projection spread times depth (a cheap supremum proxy: thin
        // flat regions glued to a large space would otherwise be missed by
        // uniform draws), half to seeded draws. Both halves are prefix-stable
        // in the budget, so c_hat can only grow with more samples.
        std::vector<std::pair<double, std::uint32_t>> ranked;
        ranked.reserve(shell.size());
        for (std::uint32_t v : shell) {
            double spread = 0.0;
            for (const Arc& a : g.arcs(v))
                spread = std::max(spread, std::abs(owner_arc(v) - owner_arc(a.to)) / a.len);
            ranked.emplace_back(-spread * opt.b * field.dist[v], v);
        }
        std::sort(ranked.begin(), ranked.end());

        std::vector<std::uint32_t> xs;
        std::unordered_set<std::uint32_t> taken;
        const std::size_t top_budget = per_tier / 2;
        for (std::size_t i = 0; i < ranked.size() && xs.size() < top_budget; ++i)
            if (taken.insert(ranked[i].second).second) xs.push_back(ranked[i].second);
        Rng rng = base_rng.derive(tier_idx);
        while (xs.size() < per_tier) {
            std::uint32_t v = shell[rng.below(shell.size())];
            if (taken.insert(v).second) xs.push_back(v);
            if (taken.size() >= shell.size()) break;
        }

        for (std::uint32_t ix : xs) {
            const double dx = field.dist[ix];
            auto ball = ball_around(g, ix, opt.b * dx, /*open=*/true);
            tier.x_samples += 1;
            for (auto [iy, d_xy] : ball) {
                if (iy == ix) continue;
                tier.pair_samples += 1;
                double disp = std::abs(owner_arc(ix) - owner_arc(iy));
                if (disp > tier.c_hat) {
                    tier.c_hat = disp;
                    tier.witness = ContractionWitness{g.id_of(ix),
                                                      g.id_of(iy),
                                                      path.vertex(field.owner_pos[ix]),
                                                      path.vertex(field.owner_pos[iy]),
                                                      d_xy,
                                                      dx,
                                                      disp};
                }
            }
        }
        report.samples += tier.pair_samples;
        report.tiers.push_back(tier);
    }

    for (const ContractionTier& t : report.tiers) {
        if (t.c_hat > report.c_hat) {
            report.c_hat = t.c_hat;
            report.violation = t.witness;
        }
    }

    // Stopping rule. "Uniformly bounded" on a finite graph is finitized as
    // tier stability: contracting when the top tier has not outgrown the mid
    // tier, not-contracting when c_hat keeps pace with the tier radii.
    std::vector<const ContractionTier*> sampled;
    for (const ContractionTier& t : report.tiers) sampled.push_back(&t);
    bool all_sampled = true;
    for (const ContractionTier& t : report.tiers) all_sampled &= t.sampled;
    if (!all_sampled) {
        report.verdict = ContractionVerdict::Inconclusive;
        report.note = "a ladder tier had no sampleable vertices at its distance";
        report.violation.reset();
        return report;
    }
    const ContractionTier& first = report.tiers.front();
    const ContractionTier& mid = report.tiers[report.tiers.size() / 2];
    const ContractionTier& top = report.tiers.back();
    if (top.c_hat <= opt.flat_ratio * std::max(mid.c_hat, 2.0 * h)) {
        report.verdict = ContractionVerdict::Contracting;
        report.violation.reset();
    } else if (top.c_hat >= opt.floor_mult * h &&
               top.c_hat / std::max(first.c_hat, 0.5 * h) >=
                   opt.growth_fraction * (top.radius / first.radius)) {
        report.verdict = ContractionVerdict::NotContracting;
        report.violation = top.witness;
    } else {
        report.verdict = ContractionVerdict::Inconclusive;
        report.note = "projection displacement neither stabilized nor grew linearly";
        report.violation.reset();
    }
    return report;
}

double ball_projection_diameter(const SpaceGraph& g, const PathInSpace& path, VertexId center,
                                double radius) {
    if (radius < 0.0) throw InputError("radius must be nonnegative");
    PathField field = distance_to_path(g, path);
    std::uint32_t ic = g.index_of(center);
    if (!(field.dist[ic] > radius))
        throw PreconditionError("ball B(center, radius) meets the path");
    auto ball = ball_around(g, ic, radius, /*open=*/false);
    double lo = kInfDistance, hi = -kInfDistance;
    for (auto [iv, d] : ball) {
        double arc = path.arclength(field.owner_pos[iv]);
        lo = std::min(lo, arc);
        hi = std::max(hi, arc);
    }
    return hi - lo;
}

// --- divergence ---------------------------------------------------------------

nlohmann::json DivergenceProfile::to_json() const {
    nlohmann::json j;
    j["kind"] = "divergence";
    j["radii"] = radii;
    j["detour"] = nlohmann::json::array();
    for (const auto& d : detour) {
        if (d) j["detour"].push_back(*d);
        else j["detour"].push_back(nullptr);
    }
    if (std::isinf(fit_exponent)) j["fit_exponent"] = "infinity";
    else j["fit_exponent"] = fit_exponent;
    j["fit_quality"] = fit_quality;
    j["class"] = to_string(klass);
    return j;
}

DivergenceProfile divergence_profile(const SpaceGraph& g, const PathInSpace& path,
                                     const std::vector<double>& radii, std::uint64_t seed) {
    (void)seed;  // detours are deterministic; the seed is part of the uniform API
    if (radii.empty()) throw InputError("radius list is empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] <= 0.0) throw InputError("radii must be positive");
        if (i > 0 && radii[i] <= radii[i - 1]) throw InputError("radii must be increasing");
    }
    const double h = g.scale();
    const double mid = path.length() / 2.0;
    if (radii.back() > mid - 2.0 * h)
        throw InputError("max radius exceeds the built region of the path");

    VertexId center = path.vertex_at_arclength(mid);
    DivergenceProfile profile;
    profile.radii = radii;
    for (double r : radii) {
        VertexId u = path.vertex_at_arclength(mid - r);
        VertexId v = path.vertex_at_arclength(mid + r);
        // The nearest path vertex can sit slightly inside radius r; shrink the
        // puncture to keep the endpoints legal (within one pitch of r).
        double du = shortest_distance(g, u, center);
        double dv = shortest_distance(g, v, center);
        double r_eff = std::min({r, du, dv});
        profile.detour.push_back(punctured_distance(g, u, v, center, r_eff));
    }
    fit_growth(profile);
    return profile;
}

std::pair<double, DivergenceClass> fit_growth(DivergenceProfile& profile) {
    if (profile.radii.size() != profile.detour.size())
        throw InputError("profile radii/detour length mismatch");
    bool infinite = false;
    for (std::size_t i = 1; i < profile.detour.size(); ++i)
        if (!profile.detour[i].has_value()) infinite = true;
    if (infinite) {
        profile.fit_exponent = kInfDistance;
        profile.fit_quality = 1.0;
        profile.klass = DivergenceClass::Infinite;
        return {profile.fit_exponent, profile.klass};
    }

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        if (!profile.detour[i] || !(*profile.detour[i] > 0.0)) continue;
        xs.push_back(std::log(profile.radii[i]));
        ys.push_back(std::log(*profile.detour[i]));
    }
    if (xs.size() < 4) {
        profile.fit_exponent = 0.0;
        profile.fit_quality = 0.0;
        profile.klass = DivergenceClass::Inconclusive;
        return {profile.fit_exponent, profile.klass};
    }

    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) {
        profile.fit_exponent = 0.0;
        profile.fit_quality = 0.0;
        profile.klass = DivergenceClass::Inconclusive;
        return {profile.fit_exponent, profile.klass};
    }
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double fit = slope * xs[i] + intercept;
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    profile.fit_exponent = slope;
    profile.fit_quality = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    // Thresholds sit midway between the integer exponents the theory
    // separates, robust to a few percent of discretization noise.
    if (slope < 1.3) profile.klass = DivergenceClass::Linear;
    else if (slope >= 1.8) profile.klass = DivergenceClass::AtLeastQuadratic;
    else profile.klass = DivergenceClass::SuperlinearSubquadratic;
    return {profile.fit_exponent, profile.klass};
}

// --- stability bound -------------------------------------------------------------

double morse_bound(double b, double c, double K, double L) {
    if (!(b > 0.0 && b <= 1.0)) throw InputError("morse_bound: b must lie in (0, 1]");
    if (!(c > 0.0)) throw InputError("morse_bound: c must be positive");
    if (!(K >= 1.0)) throw InputError("morse_bound: K must be >= 1");
    if (!(L >= 0.0)) throw InputError("morse_bound: L must be >= 0");
    const double D = std::max({K, L, 1.0});
    const double A = 2.0 * (1.0 + c * D) / b;
    const double m = D * (2.0 * A + 2.0 * L + c + 1.0);
    return D * (2.0 * A + 2.0 * L + c * m + c + 1.0) + A + L;
}

// --- adversarial search ------------------------------------------------------------

nlohmann::json MorseReport::to_json() const {
    nlohmann::json j;
    j["kind"] = "morse";
    j["K"] = constants.K;
    j["L"] = constants.L;
    j["verdict"] = to_string(verdict);
    if (!note.empty()) j["note"] = note;
    if (bound_from_contraction) j["bound_from_contraction"] = *bound_from_contraction;
    j["scales"] = nlohmann::json::array();
    for (const MorseScaleResult& s : scales) {
        nlohmann::json sj = {{"scale", s.scale},
                             {"worst_wander", s.worst_wander},
                             {"found_candidate", s.found_candidate}};
        if (!s.witness.empty()) {
            sj["witness_vertices"] = s.witness;
            sj["witness_holds"] = s.witness_check.holds;
            sj["witness_margin"] = s.witness_check.worst_margin;
        }
        j["scales"].push_back(sj);
    }
    return j;
}

namespace {

// Waypoint pool: vertices whose distance from the path lies in the height
// shell and whose projection falls in the arc window, ranked by the same
// spread-times-depth proxy the contraction scan uses. Flat directions rank
// first, which is what lets thin flat pieces glued into a large space get
// found by a handful of restarts.
std::vector<std::uint32_t> waypoint_pool(const SpaceGraph& g, const PathInSpace& path,
                                         const PathField& field, double height, double arc_center,
                                         double arc_halfwidth) {
    std::vector<std::pair<double, std::uint32_t>> ranked;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (field.dist[v] < 0.85 * height || field.dist[v] > 1.15 * height) continue;
        double arc = path.arclength(field.owner_pos[v]);
        if (std::abs(arc - arc_center) > arc_halfwidth) continue;
        double spread = 0.0;
        for (const Arc& a : g.arcs(v))
            spread = std::max(spread, std::abs(arc - path.arclength(field.owner_pos[a.to])) / a.len);
        ranked.emplace_back(-spread * field.dist[v], v);
    }
    std::sort(ranked.begin(), ranked.end());
    const std::size_t keep = std::min<std::size_t>(ranked.size(), 32);
    std::vector<std::uint32_t> pool;
    pool.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) pool.push_back(ranked[i].second);
    return pool;
}

std::vector<VertexId> concat_walks(std::vector<VertexId> a, const std::vector<VertexId>& b) {
    for (std::size_t i = 1; i < b.size(); ++i) a.push_back(b[i]);
    return a;
}

} // namespace

MorseReport morse_adversarial_search(const SpaceGraph& g, const PathInSpace& path,
                                     const MorseOptions& opt) {
    if (opt.scales.empty()) throw InputError("morse search needs at least one scale");
    if (opt.constants.K < 1.0 || opt.constants.L < 0.0)
        throw InputError("quasi-geodesic constants need K >= 1, L >= 0");
    const double len = path.length();
    const double mid = len / 2.0;
    for (double s : opt.scales)
        if (s < 0.0 || mid - s / 2.0 < -1e-9 || mid + s / 2.0 > len + 1e-9)
            throw InputError("scale " + std::to_string(s) + " is outside the built region");

    const double h = g.scale();
    PathField field = distance_to_path(g, path);
    Rng base_rng(opt.seed);

    MorseReport report;
    report.constants = opt.constants;
    if (opt.contraction_bc)
        report.bound_from_contraction = morse_bound(opt.contraction_bc->first,
                                                    opt.contraction_bc->second, opt.constants.K,
                                                    opt.constants.L);

    std::vector<double> scales = opt.scales;
    std::sort(scales.begin(), scales.end());
    for (std::size_t si = 0; si < scales.size(); ++si) {
        const double s = scales[si];
        MorseScaleResult result;
        result.scale = s;
        if (s <= 0.0) {
            result.found_candidate = true;
            result.witness = {path.vertex_at_arclength(mid)};
            report.scales.push_back(std::move(result));
            continue;
        }
        const double a_arc = mid - s / 2.0;
        const double b_arc = mid + s / 2.0;
        VertexId a = path.vertex_at_arclength(a_arc);
        VertexId b = path.vertex_at_arclength(b_arc);
        std::uint32_t ia = g.index_of(a), ib = g.index_of(b);
        std::vector<double> to_b = distance_field(g, ib);

        // Baseline: the path segment between the endpoints. It keeps the
        // verdict meaningful even when every bulge fails validation.
        {
            std::size_t pa = path.position_at_arclength(a_arc);
            std::size_t pb = path.position_at_arclength(b_arc);
            if (pa > pb) std::swap(pa, pb);
            std::vector<VertexId> seg(path.vertices().begin() + static_cast<std::ptrdiff_t>(pa),
                                      path.vertices().begin() + static_cast<std::ptrdiff_t>(pb + 1));
            PathInSpace cand = PathInSpace::from_vertices(g, seg);
            QuasiWitness check = verify_quasi_geodesic(g, cand, opt.constants,
                                                       opt.validation_pairs,
                                                       base_rng.derive(si).next_u64());
            if (check.holds) {
                result.found_candidate = true;
                result.worst_wander = 0.0;
                result.witness = seg;
                result.witness_check = check;
            }
        }

        for (std::size_t restart = 0; restart < opt.restarts; ++restart) {
            Rng rng = base_rng.derive(si * 1000 + restart);
            const double u1 = rng.in_range(-1.0, 1.0);
            const double u2 = rng.in_range(-1.0, 1.0);
            double alpha1 = a_arc + s * (0.25 + 0.08 * u1);
            double alpha2 = b_arc - s * (0.25 + 0.08 * u2);
            if (alpha1 > alpha2) std::swap(alpha1, alpha2);

            // Returns the validated wander at this bulge height, or nullopt
            // when no candidate exists / verification fails.
            auto try_height = [&](double height) -> std::optional<double> {
                auto pool1 = waypoint_pool(g, path, field, height, alpha1, 0.15 * s);
                auto pool2 = waypoint_pool(g, path, field, height, alpha2, 0.15 * s);
                if (pool1.empty() || pool2.empty()) return std::nullopt;
                std::uint32_t w1 = pool1[rng.below(pool1.size())];
                std::uint32_t w2 = pool2[rng.below(pool2.size())];

                std::vector<double> to_w1 = distance_field(g, w1);
                std::vector<VertexId> leg1 = greedy_optimal_walk(g, ia, w1, to_w1);
                std::vector<VertexId> leg2 = greedy_optimal_walk(g, w2, w1, to_w1);
                std::reverse(leg2.begin(), leg2.end());
                std::vector<VertexId> leg3 = greedy_optimal_walk(g, w2, ib, to_b);
                std::vector<VertexId> walk = concat_walks(concat_walks(leg1, leg2), leg3);

                PathInSpace cand = PathInSpace::from_vertices(g, walk);
                double wander = 0.0;
                for (VertexId id : walk) wander = std::max(wander, field.dist[g.index_of(id)]);
                QuasiWitness check = verify_quasi_geodesic(g, cand, opt.constants,
                                                           opt.validation_pairs, rng.next_u64());
                if (!check.holds) return std::nullopt;
                if (wander > result.worst_wander) {
                    result.found_candidate = true;
                    result.worst_wander = wander;
                    result.witness = std::move(walk);
                    result.witness_check = check;
                }
                return wander;
            };

            // Geometric growth until the bulge stops validating, then a few
            // bisection steps between the last success and the first failure
            // (a bare geometric ladder leaves the maximal height badly
            // quantized, which flattens the wander profile across scales).
            double lo = 0.0;
            std::optional<double> hi;
            double height = 4.0 * h;
            std::size_t failures = 0;
            for (std::size_t step = 0; step < opt.growth_steps && failures < 2; ++step) {
                if (try_height(height)) {
                    lo = height;
                    failures = 0;
                } else {
                    hi = height;
                    ++failures;
                }
                height *= 1.6;
            }
            if (hi && lo > 0.0 && *hi > lo) {
                double a_h = lo, b_h = *hi;
                for (int step = 0; step < 3; ++step) {
                    double mid_h = 0.5 * (a_h + b_h);
                    if (try_height(mid_h)) a_h = mid_h;
                    else b_h = mid_h;
                }
            }
        }
        report.scales.push_back(std::move(result));
    }

    // Verdict: flat wander across scales reads morse-at-scale, linear growth
    // reads not-morse. Inconclusive when a scale produced no candidate at all
    // or the profile is in between.
    bool all_found = true;
    for (const MorseScaleResult& r : report.scales) all_found &= r.found_candidate;
    if (!all_found || report.scales.size() < 2) {
        report.verdict = MorseVerdict::Inconclusive;
        report.note = "no valid candidate at some scale";
        return report;
    }
    const MorseScaleResult& first = report.scales.front();
    const MorseScaleResult& midr = report.scales[report.scales.size() / 2];
    const MorseScaleResult& top = report.scales.back();
    if (top.worst_wander <= opt.flat_ratio * std::max(midr.worst_wander, 2.0 * h)) {
        report.verdict = MorseVerdict::MorseAtScale;
    } else if (top.worst_wander >= opt.floor_mult * h &&
               top.worst_wander / std::max(first.worst_wander, 0.5 * h) >=
                   opt.growth_fraction * (top.scale / std::max(first.scale, 1e-9))) {
        report.verdict = MorseVerdict::NotMorse;
    } else {
        report.verdict = MorseVerdict::Inconclusive;
        report.note = "wander neither stabilized nor grew linearly";
    }
    return report;
}

// --- detour dissection ---------------------------------------------------------------

nlohmann::json DissectionWitness::to_json() const {
    return {{"kind", "dissection"},
            {"r", r},
            {"epsilon", epsilon},
            {"c", c},
            {"pair_index", pair_index},
            {"pair_gap", pair_gap},
            {"shortcut_len", shortcut_len},
            {"shortcut_clearance", shortcut_clearance},
            {"z1", z1},
            {"z2", z2},
            {"y1", y1},
            {"y2", y2}};
}

DissectionWitness dissect_detour(const SpaceGraph& g, const PathInSpace& path,
                                 const PathInSpace& detour, double r) {
    if (!(r > 0.0)) throw InputError("dissection radius must be positive");
    const double mid = path.length() / 2.0;
    VertexId u = path.vertex_at_arclength(mid - r);
    VertexId v = path.vertex_at_arclength(mid + r);
    if (detour.front() != u || detour.back() != v)
        throw InputError("detour endpoints must be the path points at arclength mid -/+ r");
    const double total = detour.length();
    if (!(total < r * r / 16.0))
        throw InputError("detour too long: need |detour| < r^2/16");

    VertexId center = path.vertex_at_arclength(mid);
    std::vector<double> from_center = distance_field(g, g.index_of(center));
    const double eps_len = puncture_epsilon(r);
    for (VertexId id : detour.vertices())
        if (from_center[g.index_of(id)] < r - eps_len)
            throw PreconditionError("detour enters the ball B_r(mid)");

    DissectionWitness out;
    out.r = r;
    out.epsilon = total / (r * r);
    out.c = std::min(std::pow(out.epsilon, -1.0 / 3.0), r / 4.0);

    const std::size_t windows = static_cast<std::size_t>(std::floor(r / out.c));
    if (windows < 1) throw InputError("detour too short to span the projection windows");

    PathField field = distance_to_path(g, path);
    // First detour hit of each projection window [-r/2 + n c +- c/2]
    // (arclengths relative to the path midpoint). Window-based hits stand in
    // for exact projection preimages, which may be empty on a graph.
    std::vector<std::size_t> hit(windows + 1, static_cast<std::size_t>(-1));
    std::size_t remaining = windows + 1;
    for (std::size_t i = 0; i < detour.size() && remaining > 0; ++i) {
        std::uint32_t iv = g.index_of(detour.vertex(i));
        double rel = path.arclength(field.owner_pos[iv]) - mid;
        double idxf = (rel + r / 2.0) / out.c;
        long long n = std::llround(idxf);
        if (n < 0 || n > static_cast<long long>(windows)) continue;
        double target = -r / 2.0 + static_cast<double>(n) * out.c;
        if (std::abs(rel - target) > out.c / 2.0 + 1e-9 * r) continue;
        if (hit[static_cast<std::size_t>(n)] == static_cast<std::size_t>(-1)) {
            hit[static_cast<std::size_t>(n)] = i;
            --remaining;
        }
    }
    if (remaining > 0)
        throw InputError("detour too short to span the projection windows");

    std::size_t best_n = 0;
    double best_gap = kInfDistance;
    for (std::size_t n = 0; n + 1 <= windows; ++n) {
        double gap = std::abs(detour.arclength(hit[n + 1]) - detour.arclength(hit[n]));
        if (gap < best_gap) {
            best_gap = gap;
            best_n = n;
        }
    }
    out.pair_index = best_n;
    out.pair_gap = best_gap;

    const std::size_t i1 = hit[best_n], i2 = hit[best_n + 1];
    out.z1 = detour.vertex(i1);
    out.z2 = detour.vertex(i2);
    std::size_t py1 = field.owner_pos[g.index_of(out.z1)];
    std::size_t py2 = field.owner_pos[g.index_of(out.z2)];
    out.y1 = path.vertex(py1);
    out.y2 = path.vertex(py2);

    PathInSpace rho1 = shortest_path(g, out.y1, out.z1);
    PathInSpace rho2 = shortest_path(g, out.y2, out.z2);
    // sigma = [y1, rho1(t)] + [rho1(t), rho2(t)] + [rho2(t), y2] with the
    // proportional parameter t = 2c / |rho1| applied to both legs.
    const double t = std::min(1.0, 2.0 * out.c / rho1.length());
    std::size_t p1 = rho1.position_at_arclength(t * rho1.length());
    std::size_t p2 = rho2.position_at_arclength(std::min(rho2.length(), t * rho2.length()));
    PathInSpace middle = shortest_path(g, rho1.vertex(p1), rho2.vertex(p2));
    out.shortcut_len = rho1.arclength(p1) + middle.length() + rho2.arclength(p2);

    // Clearance of the middle segment from the sub-geodesic [y1, y2].
    std::vector<std::uint32_t> sub;
    for (std::size_t pos = std::min(py1, py2); pos <= std::max(py1, py2); ++pos)
        sub.push_back(g.index_of(path.vertex(pos)));
    PathField to_sub = distance_to_set(g, sub);
    double clearance = kInfDistance;
    for (VertexId id : middle.vertices())
        clearance = std::min(clearance, to_sub.dist[g.index_of(id)]);
    out.shortcut_clearance = clearance;
    return out;
}

} // namespace qgeo
