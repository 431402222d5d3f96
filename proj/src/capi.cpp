#include "qgeo.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "qgeo/errors.hpp"
#include "qgeo/harness.hpp"
#include "qgeo/json_io.hpp"
#include "qgeo/metric.hpp"
#include "qgeo/quasi.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/zoo.hpp"

using nlohmann::json;

struct qgeo_graph {
    qgeo::SpaceGraph graph;
};

struct qgeo_path {
    qgeo::PathInSpace path;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
qgeo_status wrap(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return QGEO_OK;
    } catch (const qgeo::PreconditionError& e) {
        g_last_error = e.what();
        return QGEO_ERROR_PRECONDITION;
    } catch (const qgeo::BudgetError& e) {
        g_last_error = e.what();
        return QGEO_ERROR_BUDGET;
    } catch (const qgeo::ParseError& e) {
        g_last_error = e.what();
        return QGEO_ERROR_PARSE;
    } catch (const qgeo::IoError& e) {
        g_last_error = e.what();
        return QGEO_ERROR_IO;
    } catch (const qgeo::InputError& e) {
        g_last_error = e.what();
        return QGEO_ERROR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QGEO_ERROR_INTERNAL;
    }
}

json parse_options(const char* text) {
    if (text == nullptr || *text == '\0') return json::object();
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw qgeo::ParseError("options are not valid JSON");
    if (!j.is_object()) throw qgeo::ParseError("options must be a JSON object");
    return j;
}

void require(bool cond, const char* message) {
    if (!cond) throw qgeo::InputError(message);
}

} // namespace

extern "C" {

const char* qgeo_version(void) { return qgeo::library_version(); }

const char* qgeo_status_name(qgeo_status status) {
    switch (status) {
        case QGEO_OK: return "ok";
        case QGEO_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case QGEO_ERROR_PRECONDITION: return "precondition violated";
        case QGEO_ERROR_BUDGET: return "budget exceeded";
        case QGEO_ERROR_PARSE: return "parse error";
        case QGEO_ERROR_IO: return "io error";
        case QGEO_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* qgeo_last_error(void) { return g_last_error.c_str(); }

void qgeo_string_free(char* s) { std::free(s); }
void qgeo_graph_free(qgeo_graph* g) { delete g; }
void qgeo_path_free(qgeo_path* p) { delete p; }

qgeo_status qgeo_graph_from_json(const char* text, qgeo_graph** out) {
    return wrap([&] {
        require(text && out, "null argument");
        *out = new qgeo_graph{qgeo::graph_from_json_string(text)};
    });
}

qgeo_status qgeo_graph_load(const char* file, qgeo_graph** out) {
    return wrap([&] {
        require(file && out, "null argument");
        *out = new qgeo_graph{qgeo::load_graph(file)};
    });
}

qgeo_status qgeo_graph_to_json(const qgeo_graph* g, char** out_text) {
    return wrap([&] {
        require(g && out_text, "null argument");
        *out_text = dup_string(qgeo::graph_to_json_string(g->graph));
    });
}

qgeo_status qgeo_graph_save(const qgeo_graph* g, const char* file) {
    return wrap([&] {
        require(g && file, "null argument");
        qgeo::save_graph(g->graph, file);
    });
}

uint64_t qgeo_graph_vertex_count(const qgeo_graph* g) { return g ? g->graph.vertex_count() : 0; }
uint64_t qgeo_graph_edge_count(const qgeo_graph* g) { return g ? g->graph.edge_count() : 0; }
double qgeo_graph_scale(const qgeo_graph* g) { return g ? g->graph.scale() : 0.0; }

qgeo_status qgeo_graph_family(const qgeo_graph* g, char** out_text) {
    return wrap([&] {
        require(g && out_text, "null argument");
        *out_text = dup_string(g->graph.family());
    });
}

qgeo_status qgeo_zoo_list(char** out_json) {
    return wrap([&] {
        require(out_json, "null argument");
        json families = json::array();
        for (const qgeo::ZooFamily& f : qgeo::zoo_families()) {
            json params = json::array();
            for (const qgeo::ZooParamSpec& p : f.params)
                params.push_back({{"name", p.name}, {"default", p.default_value}, {"doc", p.doc}});
            families.push_back({{"name", f.name}, {"doc", f.doc}, {"params", params}});
        }
        *out_json = dup_string(families.dump(2) + "\n");
    });
}

qgeo_status qgeo_zoo_build(const char* family, const char* params_json, qgeo_graph** out_graph,
                           qgeo_path** out_base_path, char** out_expected_json) {
    return wrap([&] {
        require(family, "null family");
        json opts = parse_options(params_json);
        std::vector<std::pair<std::string, double>> params;
        std::size_t budget = qgeo::kDefaultVertexBudget;
        for (auto it = opts.begin(); it != opts.end(); ++it) {
            if (it.key() == "budget_cap") budget = it.value().get<std::size_t>();
            else params.emplace_back(it.key(), it.value().get<double>());
        }
        qgeo::ZooEntry entry = qgeo::build_zoo_entry(family, params, budget);
        if (out_expected_json) {
            json expected = {{"morse", entry.expected.morse},
                             {"contracting", entry.expected.contracting},
                             {"divergence_class", qgeo::to_string(entry.expected.divergence)}};
            *out_expected_json = dup_string(expected.dump(2) + "\n");
        }
        if (out_base_path) *out_base_path = new qgeo_path{entry.base_path};
        if (out_graph) *out_graph = new qgeo_graph{std::move(entry.graph)};
    });
}

qgeo_status qgeo_path_from_json(const qgeo_graph* g, const char* text, qgeo_path** out) {
    return wrap([&] {
        require(g && text && out, "null argument");
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw qgeo::ParseError("path document is not valid JSON");
        *out = new qgeo_path{qgeo::path_from_json(g->graph, j)};
    });
}

qgeo_status qgeo_path_load(const qgeo_graph* g, const char* file, qgeo_path** out) {
    return wrap([&] {
        require(g && file && out, "null argument");
        *out = new qgeo_path{qgeo::load_path(g->graph, file)};
    });
}

qgeo_status qgeo_path_to_json(const qgeo_graph* g, const qgeo_path* p, char** out_text) {
    return wrap([&] {
        require(g && p && out_text, "null argument");
        *out_text = dup_string(qgeo::path_to_json(g->graph, p->path).dump(2) + "\n");
    });
}

double qgeo_path_length(const qgeo_path* p) { return p ? p->path.length() : 0.0; }
uint64_t qgeo_path_vertex_count(const qgeo_path* p) { return p ? p->path.size() : 0; }

qgeo_status qgeo_shortest_distance(const qgeo_graph* g, uint32_t u, uint32_t v, double* out) {
    return wrap([&] {
        require(g && out, "null argument");
        *out = qgeo::shortest_distance(g->graph, u, v);
    });
}

qgeo_status qgeo_shortest_path(const qgeo_graph* g, uint32_t u, uint32_t v, qgeo_path** out) {
    return wrap([&] {
        require(g && out, "null argument");
        *out = new qgeo_path{qgeo::shortest_path(g->graph, u, v)};
    });
}

qgeo_status qgeo_punctured_distance(const qgeo_graph* g, uint32_t u, uint32_t v, uint32_t center,
                                    double radius, int* out_reachable, double* out) {
    return wrap([&] {
        require(g && out_reachable && out, "null argument");
        auto d = qgeo::punctured_distance(g->graph, u, v, center, radius);
        *out_reachable = d.has_value() ? 1 : 0;
        if (d) *out = *d;
    });
}

qgeo_status qgeo_check_cat0(const qgeo_graph* g, const qgeo_path* base, const char* options_json,
                            char** out_report_json) {
    return wrap([&] {
        require(g && out_report_json, "null argument");
        json opts = parse_options(options_json);
        qgeo::Cat0SuiteOptions suite;
        suite.seed = opts.value("seed", std::uint64_t{1});
        suite.triangle_samples = opts.value("triangle_samples", suite.triangle_samples);
        suite.interior_samples = opts.value("interior_samples", suite.interior_samples);
        suite.convexity_pairs = opts.value("convexity_pairs", suite.convexity_pairs);
        suite.t_samples = opts.value("t_samples", suite.t_samples);
        suite.projection_pairs = opts.value("projection_pairs", suite.projection_pairs);
        suite.uniqueness_pairs = opts.value("uniqueness_pairs", suite.uniqueness_pairs);
        suite.run_uniqueness = opts.value("run_uniqueness", suite.run_uniqueness);
        std::string profile_name = opts.value("tol_profile", g->graph.family());
        const qgeo::TolProfile& tol = qgeo::tolerance_profile(profile_name);

        auto reports = qgeo::run_cat0_suite(g->graph, base ? &base->path : nullptr, suite, tol);
        json suite_json;
        suite_json["kind"] = "check_suite";
        suite_json["family"] = g->graph.family();
        suite_json["tol_profile"] = tol.name;
        suite_json["reports"] = json::array();
        bool ok = true;
        for (const qgeo::CheckReport& r : reports) {
            suite_json["reports"].push_back(r.to_json());
            ok &= r.passed();
        }
        suite_json["passed"] = ok;
        *out_report_json = dup_string(suite_json.dump(2) + "\n");
    });
}

qgeo_status qgeo_classify(const qgeo_graph* g, const qgeo_path* path, const char* options_json,
                          char** out_report_json) {
    return wrap([&] {
        require(g && path && out_report_json, "null argument");
        json opts = parse_options(options_json);
        std::uint64_t seed = opts.value("seed", std::uint64_t{1});

        std::vector<std::string> which =
            opts.contains("which") ? opts["which"].get<std::vector<std::string>>()
                                   : std::vector<std::string>{"contract", "diverge", "morse"};
        auto wants = [&](const char* name) {
            return std::find(which.begin(), which.end(), name) != which.end();
        };

        // Family defaults supply any unspecified classifier parameters.
        qgeo::FamilyRunParams defs;
        for (const qgeo::FamilyRunParams& d : qgeo::ScenarioConfig::defaults().entries)
            if (d.family == g->graph.family()) defs = d;
        if (defs.family.empty()) {
            defs = qgeo::ScenarioConfig::defaults().entries.front();
            defs.family = g->graph.family();
        }

        json bundle;
        bundle["kind"] = "classify_bundle";
        bundle["family"] = g->graph.family();

        std::optional<std::pair<double, double>> contraction_bc;
        if (wants("contract")) {
            qgeo::ContractionOptions copt;
            copt.b = opts.value("b", 1.0);
            copt.radius_ladder = opts.contains("ladder")
                                     ? opts["ladder"].get<std::vector<double>>()
                                     : defs.contraction_ladder;
            copt.budget = opts.value("budget", defs.contraction_budget);
            copt.seed = qgeo::Rng(seed).derive("contraction").next_u64();
            qgeo::ContractionReport rep = qgeo::contraction_scan(g->graph, path->path, copt);
            bundle["contraction"] = rep.to_json();
            if (rep.verdict == qgeo::ContractionVerdict::Contracting)
                contraction_bc = {{copt.b, std::max(rep.c_hat, g->graph.scale()) * 1.1}};
        }
        if (wants("diverge")) {
            std::vector<double> radii = opts.contains("radii")
                                            ? opts["radii"].get<std::vector<double>>()
                                            : defs.divergence_radii;
            qgeo::DivergenceProfile prof = qgeo::divergence_profile(
                g->graph, path->path, radii, qgeo::Rng(seed).derive("divergence").next_u64());
            bundle["divergence"] = prof.to_json();
        }
        if (wants("morse")) {
            qgeo::MorseOptions mopt;
            mopt.constants.K = opts.value("K", defs.morse_constants.K);
            mopt.constants.L = opts.value("L", defs.morse_constants.L);
            mopt.scales = opts.contains("scales") ? opts["scales"].get<std::vector<double>>()
                                                  : defs.morse_scales;
            mopt.restarts = opts.value("restarts", defs.morse_restarts);
            if (opts.contains("budget")) {
                std::size_t budget = opts["budget"].get<std::size_t>();
                std::size_t per_scale = std::max<std::size_t>(
                    1, budget / std::max<std::size_t>(1, mopt.scales.size() * mopt.growth_steps));
                mopt.restarts = per_scale;
            }
            mopt.seed = qgeo::Rng(seed).derive("morse").next_u64();
            mopt.contraction_bc = contraction_bc;
            qgeo::MorseReport rep = qgeo::morse_adversarial_search(g->graph, path->path, mopt);
            bundle["morse"] = rep.to_json();
        }
        if (wants("dissect")) {
            require(opts.contains("dissect_r"), "dissect needs the flag dissect_r");
            double r = opts["dissect_r"].get<double>();
            double mid = path->path.length() / 2.0;
            qgeo::VertexId u = path->path.vertex_at_arclength(mid - r);
            qgeo::VertexId v = path->path.vertex_at_arclength(mid + r);
            qgeo::VertexId center = path->path.vertex_at_arclength(mid);
            double du = qgeo::shortest_distance(g->graph, u, center);
            double dv = qgeo::shortest_distance(g->graph, v, center);
            double r_eff = std::min({r, du, dv});
            auto detour = qgeo::punctured_shortest_path(g->graph, u, v, center, r_eff);
            if (!detour)
                throw qgeo::PreconditionError("no detour exists around the puncture at this r");
            qgeo::DissectionWitness w = qgeo::dissect_detour(g->graph, path->path, *detour, r);
            bundle["dissection"] = w.to_json();
        }
        *out_report_json = dup_string(bundle.dump(2) + "\n");
    });
}

qgeo_status qgeo_run_scenario(const char* config_json, char** out_summary_json) {
    return wrap([&] {
        qgeo::ScenarioConfig cfg;
        if (config_json == nullptr || *config_json == '\0') {
            cfg = qgeo::ScenarioConfig::defaults();
        } else {
            json j = json::parse(config_json, nullptr, false);
            if (j.is_discarded()) throw qgeo::ParseError("scenario config is not valid JSON");
            cfg = qgeo::ScenarioConfig::from_json(j);
        }
        qgeo::ScenarioResult result = qgeo::run_scenario(cfg);
        if (out_summary_json) *out_summary_json = dup_string(result.summary.dump(2) + "\n");
    });
}

qgeo_status qgeo_render_csv(const char* report_json, char** out_csv) {
    return wrap([&] {
        require(report_json && out_csv, "null argument");
        json j = json::parse(report_json, nullptr, false);
        if (j.is_discarded()) throw qgeo::ParseError("report is not valid JSON");
        *out_csv = dup_string(qgeo::render_csv(j));
    });
}

} // extern "C"
