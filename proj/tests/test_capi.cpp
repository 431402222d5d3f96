// Exercises the shared-library surface: opaque handles, status codes, JSON
// reports. Links only the C API, exactly like an external consumer.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "qgeo.h"

using nlohmann::json;

namespace {

struct Free {
    void operator()(char* p) const { qgeo_string_free(p); }
    void operator()(qgeo_graph* g) const { qgeo_graph_free(g); }
    void operator()(qgeo_path* p) const { qgeo_path_free(p); }
};
template <typename T>
using Owned = std::unique_ptr<T, Free>;

Owned<qgeo_graph> build_tree() {
    qgeo_graph* g = nullptr;
    REQUIRE(qgeo_zoo_build("regular_tree", R"({"degree":3,"depth":6})", &g, nullptr, nullptr) ==
            QGEO_OK);
    return Owned<qgeo_graph>(g);
}

} // namespace

TEST_CASE("version and status strings") {
    CHECK(std::strlen(qgeo_version()) > 0);
    CHECK(std::string(qgeo_status_name(QGEO_OK)) == "ok");
    CHECK(std::strlen(qgeo_status_name(QGEO_ERROR_BUDGET)) > 0);
}

TEST_CASE("zoo list names every family") {
    char* raw = nullptr;
    REQUIRE(qgeo_zoo_list(&raw) == QGEO_OK);
    Owned<char> text(raw);
    json families = json::parse(text.get());
    CHECK(families.size() == 6);
    bool saw_wedge = false;
    for (const auto& f : families) saw_wedge |= f.at("name") == "plane_wedge";
    CHECK(saw_wedge);
}

TEST_CASE("zoo build, graph accessors, expected record") {
    qgeo_graph* g = nullptr;
    qgeo_path* base = nullptr;
    char* expected_raw = nullptr;
    REQUIRE(qgeo_zoo_build("regular_tree", R"({"degree":3,"depth":6})", &g, &base,
                           &expected_raw) == QGEO_OK);
    Owned<qgeo_graph> graph(g);
    Owned<qgeo_path> path(base);
    Owned<char> expected_text(expected_raw);

    CHECK(qgeo_graph_vertex_count(graph.get()) == 1 + 3 * 63);
    CHECK(qgeo_graph_scale(graph.get()) == 1.0);
    CHECK(qgeo_path_length(path.get()) == 12.0);
    json expected = json::parse(expected_text.get());
    CHECK(expected.at("morse") == true);
    CHECK(expected.at("divergence_class") == "infinite");

    SUBCASE("family accessor") {
        char* fam = nullptr;
        REQUIRE(qgeo_graph_family(graph.get(), &fam) == QGEO_OK);
        Owned<char> fam_text(fam);
        CHECK(std::string(fam_text.get()) == "regular_tree");
    }
    SUBCASE("graph JSON round trip through the API") {
        char* text = nullptr;
        REQUIRE(qgeo_graph_to_json(graph.get(), &text) == QGEO_OK);
        Owned<char> dump(text);
        qgeo_graph* back = nullptr;
        REQUIRE(qgeo_graph_from_json(dump.get(), &back) == QGEO_OK);
        Owned<qgeo_graph> round(back);
        CHECK(qgeo_graph_vertex_count(round.get()) == qgeo_graph_vertex_count(graph.get()));
        CHECK(qgeo_graph_edge_count(round.get()) == qgeo_graph_edge_count(graph.get()));
    }
    SUBCASE("path JSON round trip") {
        char* text = nullptr;
        REQUIRE(qgeo_path_to_json(graph.get(), path.get(), &text) == QGEO_OK);
        Owned<char> dump(text);
        qgeo_path* back = nullptr;
        REQUIRE(qgeo_path_from_json(graph.get(), dump.get(), &back) == QGEO_OK);
        Owned<qgeo_path> round(back);
        CHECK(qgeo_path_length(round.get()) == qgeo_path_length(path.get()));
    }
}

TEST_CASE("metric operations through the API") {
    Owned<qgeo_graph> tree = build_tree();

    double d = -1.0;
    REQUIRE(qgeo_shortest_distance(tree.get(), 0, 1, &d) == QGEO_OK);
    CHECK(d == 1.0);

    qgeo_path* p = nullptr;
    REQUIRE(qgeo_shortest_path(tree.get(), 0, 1, &p) == QGEO_OK);
    Owned<qgeo_path> path(p);
    CHECK(qgeo_path_vertex_count(path.get()) == 2);

    SUBCASE("punctured distance reports unreachability without failing") {
        qgeo_graph* g = nullptr;
        qgeo_path* base = nullptr;
        REQUIRE(qgeo_zoo_build("regular_tree", "{}", &g, &base, nullptr) == QGEO_OK);
        Owned<qgeo_graph> graph(g);
        Owned<qgeo_path> diameter(base);
        int reachable = -1;
        double len = 0.0;
        // the diameter endpoints are separated once the root ball is removed
        char* text = nullptr;
        REQUIRE(qgeo_path_to_json(graph.get(), diameter.get(), &text) == QGEO_OK);
        Owned<char> dump(text);
        json ids = json::parse(dump.get()).at("vertex_ids");
        REQUIRE(qgeo_punctured_distance(graph.get(), ids.front().get<uint32_t>(),
                                        ids.back().get<uint32_t>(), 0, 1.0, &reachable,
                                        &len) == QGEO_OK);
        CHECK(reachable == 0);
    }
    SUBCASE("error paths set status and message") {
        double out = 0.0;
        CHECK(qgeo_shortest_distance(tree.get(), 0, 999999, &out) ==
              QGEO_ERROR_INVALID_ARGUMENT);
        CHECK(std::strlen(qgeo_last_error()) > 0);
        qgeo_graph* g = nullptr;
        CHECK(qgeo_zoo_build("no_such_family", "{}", &g, nullptr, nullptr) ==
              QGEO_ERROR_INVALID_ARGUMENT);
        CHECK(qgeo_zoo_build("regular_tree", R"({"degree":3,"depth":14,"budget_cap":100})",
                             &g, nullptr, nullptr) == QGEO_ERROR_BUDGET);
        CHECK(qgeo_graph_from_json("{not json", &g) == QGEO_ERROR_PARSE);
        int reachable = 0;
        double len = 0.0;
        CHECK(qgeo_punctured_distance(tree.get(), 0, 1, 0, 5.0, &reachable, &len) ==
              QGEO_ERROR_PRECONDITION);
    }
}

TEST_CASE("check and classify bundles") {
    qgeo_graph* g = nullptr;
    qgeo_path* base = nullptr;
    REQUIRE(qgeo_zoo_build("regular_tree", R"({"degree":3,"depth":8})", &g, &base, nullptr) ==
            QGEO_OK);
    Owned<qgeo_graph> graph(g);
    Owned<qgeo_path> path(base);

    SUBCASE("cat0 suite returns a passing report for the tree") {
        char* raw = nullptr;
        REQUIRE(qgeo_check_cat0(graph.get(), path.get(),
                                R"({"seed":3,"triangle_samples":6,"convexity_pairs":4,
                                    "projection_pairs":24})",
                                &raw) == QGEO_OK);
        Owned<char> text(raw);
        json report = json::parse(text.get());
        CHECK(report.at("kind") == "check_suite");
        CHECK(report.at("passed") == true);
        CHECK(report.at("reports").size() == 3);

        char* csv = nullptr;
        REQUIRE(qgeo_render_csv(text.get(), &csv) == QGEO_OK);
        Owned<char> csv_text(csv);
        CHECK(std::string(csv_text.get()).find("comparison_triangle") != std::string::npos);
    }
    SUBCASE("classifier bundle carries contraction, divergence and morse") {
        char* raw = nullptr;
        REQUIRE(qgeo_classify(graph.get(), path.get(),
                              R"({"seed":5,"which":["contract","diverge","morse"],
                                  "ladder":[2,3,5],"radii":[1,2,3,4],
                                  "scales":[6,10,14],"K":2,"L":1,"restarts":2})",
                              &raw) == QGEO_OK);
        Owned<char> text(raw);
        json bundle = json::parse(text.get());
        CHECK(bundle.at("contraction").at("verdict") == "contracting");
        CHECK(bundle.at("divergence").at("class") == "infinite");
        CHECK(bundle.at("morse").at("verdict") == "morse-at-scale");
    }
    SUBCASE("dissection through the API on a flat detour") {
        qgeo_graph* eg = nullptr;
        qgeo_path* ebase = nullptr;
        REQUIRE(qgeo_zoo_build("euclidean_plane", R"({"halfwidth":55})", &eg, &ebase, nullptr) ==
                QGEO_OK);
        Owned<qgeo_graph> egraph(eg);
        Owned<qgeo_path> epath(ebase);
        char* raw = nullptr;
        REQUIRE(qgeo_classify(egraph.get(), epath.get(),
                              R"({"seed":1,"which":["dissect"],"dissect_r":52})", &raw) ==
                QGEO_OK);
        Owned<char> text(raw);
        json bundle = json::parse(text.get());
        const auto& w = bundle.at("dissection");
        CHECK(w.at("c").get<double>() > 0.0);
        CHECK(w.at("shortcut_len").get<double>() <= 7.0 * w.at("c").get<double>() * 1.05);
    }
}

TEST_CASE("scenario through the API") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qgeo_capi_scenario";
    fs::remove_all(dir);
    json cfg = {{"seed", 4},
                {"out_dir", dir.string()},
                {"entries", {{{"family", "regular_tree"},
                              {"build_params", {{"degree", 3}, {"depth", 8}}},
                              {"divergence_radii", {1, 2, 3, 4}},
                              {"contraction_ladder", {2, 3, 5}},
                              {"morse_scales", {6, 10, 14}},
                              {"morse_K", 2},
                              {"morse_L", 1},
                              {"checks", {{"triangle_samples", 6},
                                          {"convexity_pairs", 4},
                                          {"projection_pairs", 24}}}}}}};
    char* raw = nullptr;
    REQUIRE(qgeo_run_scenario(cfg.dump().c_str(), &raw) == QGEO_OK);
    Owned<char> text(raw);
    json summary = json::parse(text.get());
    CHECK(summary.at("all_coherent") == true);
    CHECK(summary.at("all_match_expected") == true);
    CHECK(fs::exists(dir / "matrix.csv"));
    CHECK(fs::exists(dir / "manifest.json"));

    SUBCASE("config without a seed is rejected") {
        json bad = {{"out_dir", dir.string()}};
        char* out = nullptr;
        CHECK(qgeo_run_scenario(bad.dump().c_str(), &out) == QGEO_ERROR_INVALID_ARGUMENT);
    }
}
