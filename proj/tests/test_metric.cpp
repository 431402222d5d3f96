#include <doctest.h>

#include <cmath>

#include "qgeo/errors.hpp"
#include "qgeo/metric.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/zoo.hpp"
#include "test_support.hpp"

using namespace qgeo;

namespace {

// Plain 4-neighbor unit grid, deliberately full of shortest-path ties.
SpaceGraph tie_grid(int n) {
    std::vector<VertexSpec> vs;
    std::vector<EdgeSpec> es;
    auto id = [n](int i, int j) { return static_cast<VertexId>(i * n + j); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            vs.push_back({id(i, j), true, double(i), double(j)});
            if (i + 1 < n) es.push_back({id(i, j), id(i + 1, j), 1.0});
            if (j + 1 < n) es.push_back({id(i, j), id(i, j + 1), 1.0});
        }
    return SpaceGraph::build("tie_grid", 1.0, std::move(vs), es);
}

} // namespace

TEST_CASE("shortest_distance matches closed forms") {
    SUBCASE("identity") {
        SpaceGraph g = tie_grid(4);
        CHECK(shortest_distance(g, 5, 5) == 0.0);
    }
    SUBCASE("euclidean grid (0,0)->(3,4) within 3% of 5") {
        ZooEntry e = build_euclidean_plane(20, 1.0);
        auto id = [](int i, int j) { return static_cast<VertexId>((i + 20) * 41 + (j + 20)); };
        double d = shortest_distance(e.graph, id(0, 0), id(3, 4));
        CHECK(std::abs(d - 5.0) / 5.0 < 0.03);
        CHECK(shortest_distance(e.graph, id(0, 0), id(10, 0)) == doctest::Approx(10.0));
    }
    SUBCASE("tree root to depth-6 leaf is exactly 6") {
        ZooEntry t = build_regular_tree(3, 6);
        // first leaf: follow first children from the root
        VertexId leaf = t.base_path.front();
        CHECK(shortest_distance(t.graph, 0, leaf) == 6.0);
    }
    SUBCASE("unknown vertex is an input error") {
        SpaceGraph g = tie_grid(3);
        CHECK_THROWS_AS(shortest_distance(g, 0, 999), InputError);
    }
}

TEST_CASE("shortest_path is optimal and lexicographically minimal") {
    SpaceGraph g = tie_grid(5);
    auto dist = oracle::floyd_warshall(g);

    SUBCASE("single vertex path") {
        PathInSpace p = shortest_path(g, 7, 7);
        CHECK(p.size() == 1);
        CHECK(p.length() == 0.0);
    }
    SUBCASE("length equals shortest_distance, sequence is lexicographic minimum") {
        Rng rng(21);
        for (int trial = 0; trial < 20; ++trial) {
            std::uint32_t u = static_cast<std::uint32_t>(rng.below(g.vertex_count()));
            std::uint32_t v = static_cast<std::uint32_t>(rng.below(g.vertex_count()));
            PathInSpace p = shortest_path(g, g.id_of(u), g.id_of(v));
            CHECK(p.length() == doctest::Approx(dist[u][v]).epsilon(1e-12));
            CHECK(std::abs(p.length() - shortest_distance(g, g.id_of(u), g.id_of(v))) <= 1e-9);

            auto all = oracle::all_shortest_paths(g, u, v, dist);
            REQUIRE(!all.empty());
            std::vector<VertexId> lex_min = *std::min_element(all.begin(), all.end());
            std::vector<VertexId> got(p.vertices().begin(), p.vertices().end());
            CHECK(got == lex_min);
        }
    }
    SUBCASE("grid base path hugs the axis") {
        ZooEntry e = build_euclidean_plane(20, 1.0);
        PathInSpace p = shortest_path(e.graph, e.base_path.front(), e.base_path.back());
        for (VertexId id : p.vertices()) {
            std::uint32_t idx = e.graph.index_of(id);
            CHECK(std::abs(e.graph.y(idx)) <= e.graph.scale());
        }
    }
    SUBCASE("tree paths are the unique simple paths") {
        ZooEntry t = build_regular_tree(3, 4);
        auto dist = oracle::floyd_warshall(t.graph);
        PathInSpace p = shortest_path(t.graph, t.base_path.front(), t.base_path.back());
        auto all = oracle::all_shortest_paths(t.graph, t.graph.index_of(t.base_path.front()),
                                              t.graph.index_of(t.base_path.back()), dist);
        REQUIRE(all.size() == 1);
        std::vector<VertexId> got(p.vertices().begin(), p.vertices().end());
        CHECK(got == all[0]);
    }
}

TEST_CASE("metric axioms on sampled triples") {
    SpaceGraph g = tie_grid(5);
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        VertexId u = g.id_of(static_cast<std::uint32_t>(rng.below(g.vertex_count())));
        VertexId v = g.id_of(static_cast<std::uint32_t>(rng.below(g.vertex_count())));
        VertexId w = g.id_of(static_cast<std::uint32_t>(rng.below(g.vertex_count())));
        double duv = shortest_distance(g, u, v);
        double dvu = shortest_distance(g, v, u);
        CHECK(duv == dvu);  // bit-exact by canonical source choice
        double duw = shortest_distance(g, u, w);
        double dwv = shortest_distance(g, w, v);
        // float-associativity slack only
        CHECK(duv <= duw + dwv + 1e-12 * (1.0 + duv));
    }
}

TEST_CASE("punctured_distance") {
    SUBCASE("radius 0 equals the plain distance") {
        SpaceGraph g = tie_grid(5);
        auto d = punctured_distance(g, 0, 24, 12, 0.0);
        REQUIRE(d.has_value());
        CHECK(*d == doctest::Approx(shortest_distance(g, 0, 24)));
    }
    SUBCASE("semicircle detour around a punctured disk") {
        ZooEntry e = build_euclidean_plane(55, 1.0);
        auto id = [](int i, int j) { return static_cast<VertexId>((i + 55) * 111 + (j + 55)); };
        const double r = 50.0;
        auto d = punctured_distance(e.graph, id(-50, 0), id(50, 0), id(0, 0), r);
        REQUIRE(d.has_value());
        const double semicircle = 3.14159265358979 * r;
        CHECK(std::abs(*d - semicircle) / semicircle < 0.05);

        SUBCASE("the realized detour is a valid path of the same length") {
            auto p = punctured_shortest_path(e.graph, id(-50, 0), id(50, 0), id(0, 0), r);
            REQUIRE(p.has_value());
            CHECK(p->length() == doctest::Approx(*d).epsilon(1e-9));
            for (VertexId vid : p->vertices())
                CHECK(shortest_distance(e.graph, vid, id(0, 0)) >= r - 1e-6);
        }
    }
    SUBCASE("removing a tree ball disconnects") {
        ZooEntry t = build_regular_tree(3, 5);
        auto d = punctured_distance(t.graph, t.base_path.front(), t.base_path.back(), 0, 1.0);
        CHECK(!d.has_value());
    }
    SUBCASE("endpoint inside the ball is a precondition error") {
        SpaceGraph g = tie_grid(5);
        CHECK_THROWS_AS(punctured_distance(g, 12, 24, 12, 2.0), PreconditionError);
    }
    SUBCASE("boundary vertices are kept: d == radius stays legal") {
        SpaceGraph g = tie_grid(5);
        // center (2,2)=12; u=(0,2)=2 is at distance exactly 2
        auto d = punctured_distance(g, 2, 22, 12, 2.0);
        CHECK(d.has_value());
    }
    SUBCASE("monotone nondecreasing in r, and always >= plain distance") {
        ZooEntry e = build_euclidean_plane(25, 1.0);
        auto id = [](int i, int j) { return static_cast<VertexId>((i + 25) * 51 + (j + 25)); };
        double base = shortest_distance(e.graph, id(-20, 0), id(20, 0));
        double prev = 0.0;
        for (double r : {0.0, 5.0, 10.0, 15.0, 20.0}) {
            auto d = punctured_distance(e.graph, id(-20, 0), id(20, 0), id(0, 0), r);
            REQUIRE(d.has_value());
            CHECK(*d >= base - 1e-9);
            CHECK(*d >= prev - 1e-9);
            prev = *d;
        }
    }
}

TEST_CASE("point_at_arclength on a straight grid path") {
    ZooEntry e = build_euclidean_plane(20, 1.0);
    auto id = [](int i, int j) { return static_cast<VertexId>((i + 20) * 41 + (j + 20)); };
    PathInSpace p = shortest_path(e.graph, id(-5, 0), id(5, 0));
    CHECK(point_at_arclength(p, 0.0) == id(-5, 0));
    CHECK(point_at_arclength(p, p.length()) == id(5, 0));
    VertexId mid = point_at_arclength(p, 5.0);
    std::uint32_t imid = e.graph.index_of(mid);
    CHECK(std::abs(e.graph.x(imid) - 0.0) <= e.graph.scale());
    CHECK(std::abs(e.graph.y(imid)) <= e.graph.scale());
}

TEST_CASE("hausdorff distance") {
    ZooEntry e = build_euclidean_plane(20, 1.0);
    auto id = [](int i, int j) { return static_cast<VertexId>((i + 20) * 41 + (j + 20)); };
    PathInSpace axis = shortest_path(e.graph, id(-20, 0), id(20, 0));

    SUBCASE("identical paths") { CHECK(hausdorff_distance(e.graph, axis, axis) == 0.0); }
    SUBCASE("translate by (0,3)") {
        PathInSpace shifted = shortest_path(e.graph, id(-20, 3), id(20, 3));
        double d = hausdorff_distance(e.graph, axis, shifted);
        CHECK(std::abs(d - 3.0) / 3.0 < 0.03);
        CHECK(d == hausdorff_distance(e.graph, shifted, axis));  // symmetric
    }
    SUBCASE("sub-path covering half the length") {
        PathInSpace half = shortest_path(e.graph, id(0, 0), id(20, 0));
        double l = axis.length();
        CHECK(hausdorff_distance(e.graph, axis, half) >= l / 2.0 * (1.0 - 1e-9));
    }
    SUBCASE("pseudometric triangle inequality on path triples") {
        PathInSpace p2 = shortest_path(e.graph, id(-20, 3), id(20, 3));
        PathInSpace p3 = shortest_path(e.graph, id(-10, -5), id(15, 7));
        double d12 = hausdorff_distance(e.graph, axis, p2);
        double d23 = hausdorff_distance(e.graph, p2, p3);
        double d13 = hausdorff_distance(e.graph, axis, p3);
        CHECK(d13 <= d12 + d23 + 1e-12 * (1.0 + d13));
    }
}
