#include <doctest.h>

#include <cmath>

#include "qgeo/cat0.hpp"
#include "qgeo/errors.hpp"
#include "qgeo/metric.hpp"
#include "qgeo/zoo.hpp"
#include "test_support.hpp"

using namespace qgeo;

namespace {

VertexId grid_id(int halfwidth, int i, int j) {
    int side = 2 * halfwidth + 1;
    return static_cast<VertexId>((i + halfwidth) * side + (j + halfwidth));
}

} // namespace

TEST_CASE("comparison triangle check") {
    SUBCASE("flat grid passes at 6h") {
        ZooEntry e = build_euclidean_plane(25, 1.0);
        CheckReport r = comparison_triangle_check(e.graph, 12, 4, 6.0, 3);
        CHECK(r.conclusive);
        CHECK(r.samples > 0);
        CHECK(r.passed());
    }
    SUBCASE("tree triangles are strictly thinner than comparison") {
        ZooEntry t = build_regular_tree(3, 6);
        CheckReport r = comparison_triangle_check(t.graph, 12, 4, 4.0, 5);
        CHECK(r.passed());
        CHECK(r.worst_violation < 0.0);

        // closed-form tripod oracle for one configuration: p, q, r leaves with
        // pairwise distance 12, m the midpoint of [q,r] at distance 12 from p;
        // the comparison triangle is equilateral with apex height 12*sqrt(3)/2
        double apex = oracle::comparison_apex_to_base_point(12, 12, 12, 6);
        CHECK(apex == doctest::Approx(12.0 * std::sqrt(3.0) / 2.0));
        CHECK(12.0 < apex + 4.0);  // tripod distance d(p,m)=12 is under comparison+tol
    }
    SUBCASE("cycle negative control fails with a large excess") {
        SpaceGraph c40 = build_cycle_negative_control(40);
        CheckReport r = comparison_triangle_check(c40, 24, 5, 6.0, 11);
        CHECK(!r.passed());
        // closed-form worst case (p=0, q=11, r=29): excess ~13.7
        double apex = oracle::comparison_apex_to_base_point(11, 11, 18, 9);
        double best_excess = 20.0 - apex;
        CHECK(best_excess == doctest::Approx(13.675).epsilon(0.01));
        CHECK(r.worst_violation > 6.0);
        CHECK(r.worst_violation <= best_excess + 0.5);
    }
}

TEST_CASE("convexity check") {
    ZooEntry e = build_euclidean_plane(25, 1.0);

    SUBCASE("parallel straight segments: psi is constant within 3h") {
        PathInSpace c1 = shortest_path(e.graph, grid_id(25, -15, 0), grid_id(25, 15, 0));
        PathInSpace c2 = shortest_path(e.graph, grid_id(25, -15, 6), grid_id(25, 15, 6));
        CheckReport r = convexity_check(e.graph, c1, c2, 17, 3.0);
        CHECK(r.passed());
    }
    SUBCASE("shared start: psi(t) <= t * d(ends) + tol") {
        PathInSpace c1 = shortest_path(e.graph, grid_id(25, -10, -5), grid_id(25, 15, -5));
        PathInSpace c2 = shortest_path(e.graph, grid_id(25, -10, -5), grid_id(25, 15, 5));
        CheckReport r = convexity_check(e.graph, c1, c2, 17, 3.0);
        CHECK(r.passed());
    }
    SUBCASE("non-geodesic input is a precondition error") {
        std::vector<VertexId> zig = {grid_id(25, 0, 0), grid_id(25, 0, 1), grid_id(25, 1, 1),
                                     grid_id(25, 1, 0)};
        PathInSpace bad = PathInSpace::from_vertices(e.graph, zig);
        PathInSpace good = shortest_path(e.graph, grid_id(25, -5, 0), grid_id(25, 5, 0));
        CHECK_THROWS_AS(convexity_check(e.graph, bad, good, 9, 3.0), PreconditionError);
    }
    SUBCASE("cycle negative control: opposite arcs violate badly") {
        SpaceGraph c40 = build_cycle_negative_control(40);
        PathInSpace c1 = shortest_path(c40, 1, 19);
        PathInSpace c2 = shortest_path(c40, 39, 21);
        CheckReport r = convexity_check(c40, c1, c2, 17, 3.0);
        CHECK(!r.passed());
        // oracle: psi(1/2) = d(10, 30) = 20 against bound 2
        CHECK(oracle::circle_distance(40, 10, 30) == 20.0);
        CHECK(r.worst_violation == doctest::Approx(18.0));
    }
}

TEST_CASE("nearest point projection") {
    ZooEntry e = build_euclidean_plane(25, 1.0);
    PathInSpace axis = shortest_path(e.graph, grid_id(25, -25, 0), grid_id(25, 25, 0));

    SUBCASE("on-path points project to themselves; idempotence") {
        Projection p = nearest_point_projection(e.graph, grid_id(25, 7, 0), axis);
        CHECK(p.vertex == grid_id(25, 7, 0));
        CHECK(p.distance == 0.0);
        Projection pp = nearest_point_projection(e.graph, p.vertex, axis);
        CHECK(pp.vertex == p.vertex);
        CHECK(pp.distance == 0.0);
    }
    SUBCASE("grid point (3,4) lands within h of (3,0) at distance ~4") {
        Projection p = nearest_point_projection(e.graph, grid_id(25, 3, 4), axis);
        std::uint32_t ip = e.graph.index_of(p.vertex);
        CHECK(std::abs(e.graph.x(ip) - 3.0) <= 1.0);
        CHECK(e.graph.y(ip) == 0.0);
        CHECK(p.distance == doctest::Approx(4.0).epsilon(0.03));
    }
    SUBCASE("argmin definition is exact: d(x, proj) <= d(x, w) for all w on the path") {
        ZooEntry t = build_regular_tree(3, 5);
        auto dist = oracle::floyd_warshall(t.graph);
        for (std::uint32_t x = 0; x < t.graph.vertex_count(); x += 11) {
            Projection p = nearest_point_projection(t.graph, t.graph.id_of(x), t.base_path);
            for (VertexId w : t.base_path.vertices())
                CHECK(p.distance <= dist[x][t.graph.index_of(w)] + 1e-12);
        }
    }
}

TEST_CASE("projection nonexpansiveness") {
    SUBCASE("flat grid onto the axis passes at 4h") {
        ZooEntry e = build_euclidean_plane(25, 1.0);
        PathInSpace axis = shortest_path(e.graph, grid_id(25, -25, 0), grid_id(25, 25, 0));
        CheckReport r = projection_nonexpansive_check(e.graph, axis, 96, 4.0, 7);
        CHECK(r.passed());
        CHECK(r.samples > 0);
    }
    SUBCASE("cycle onto a quarter arc fails for straddling pairs") {
        SpaceGraph c40 = build_cycle_negative_control(40);
        PathInSpace quarter = shortest_path(c40, 0, 10);
        CheckReport r = projection_nonexpansive_check(c40, quarter, 96, 4.0, 7);
        CHECK(!r.passed());
        CHECK(r.worst_violation > 4.0);
    }
}

TEST_CASE("geodesic uniqueness check") {
    SUBCASE("trees have unique geodesics: passes with tube 0") {
        ZooEntry t = build_regular_tree(3, 6);
        CheckReport r = geodesic_uniqueness_check(t.graph, 6, 0.0, 0.0, 0.5, 3);
        CHECK(r.conclusive);
        CHECK(r.passed());
    }
    SUBCASE("flat grid near-geodesics stay in the lens tube") {
        ZooEntry e = build_euclidean_plane(25, 1.0);
        CheckReport r = geodesic_uniqueness_check(e.graph, 4, 0.01, 0.2, 4.0, 3);
        CHECK(r.conclusive);
        CHECK(r.passed());
    }
    SUBCASE("cycle antipodes have two far-apart geodesics") {
        SpaceGraph c40 = build_cycle_negative_control(40);
        // enough pairs that the seeded sampler draws an antipodal pair
        CheckReport r = geodesic_uniqueness_check(c40, 24, 0.0, 0.2, 4.0, 1);
        CHECK(!r.passed());
        // oracle: the opposite arc sits at distance 10 from the geodesic and
        // the tube at d=20 is 0.2*20+4 = 8, so the violation is 2
        CHECK(r.worst_violation == doctest::Approx(2.0));
    }
}

TEST_CASE("cat0 suite end to end on small entries") {
    SUBCASE("flat grid passes everything at its profile") {
        ZooEntry e = build_euclidean_plane(25, 1.0);
        Cat0SuiteOptions opt;
        opt.triangle_samples = 10;
        opt.convexity_pairs = 6;
        opt.projection_pairs = 48;
        opt.seed = 5;
        auto reports = run_cat0_suite(e.graph, &e.base_path, opt,
                                      tolerance_profile("euclidean_plane"));
        REQUIRE(reports.size() == 3);
        for (const CheckReport& r : reports) {
            INFO(r.name);
            CHECK(r.passed());
        }
    }
    SUBCASE("negative control fails all three") {
        SpaceGraph c40 = build_cycle_negative_control(40);
        PathInSpace quarter = shortest_path(c40, 0, 10);
        Cat0SuiteOptions opt;
        opt.triangle_samples = 20;
        opt.convexity_pairs = 12;
        opt.projection_pairs = 96;
        opt.seed = 5;
        auto reports = run_cat0_suite(c40, &quarter, opt, tolerance_profile("default"));
        REQUIRE(reports.size() == 3);
        for (const CheckReport& r : reports) {
            INFO(r.name);
            CHECK(!r.passed());
            CHECK(!r.worst_witness.empty());
        }
    }
}
