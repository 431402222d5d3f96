// qgeo command line: zoo builders, validity checks, path classifiers, and the
// full scenario runner, all through the shared C API.
//
// Exit codes: 0 = success (and, for matrix/run, all rows coherent),
//             2 = the equivalence matrix found an incoherent row,
//             3 = error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgeo.h"

using nlohmann::json;

namespace {

struct StringDeleter {
    void operator()(char* s) const { qgeo_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct GraphDeleter {
    void operator()(qgeo_graph* g) const { qgeo_graph_free(g); }
};
using Graph = std::unique_ptr<qgeo_graph, GraphDeleter>;

struct PathDeleter {
    void operator()(qgeo_path* p) const { qgeo_path_free(p); }
};
using Path = std::unique_ptr<qgeo_path, PathDeleter>;

[[noreturn]] void fail(qgeo_status status) {
    std::cerr << "error (" << qgeo_status_name(status) << "): " << qgeo_last_error() << "\n";
    std::exit(3);
}

void check_ok(qgeo_status status) {
    if (status != QGEO_OK) fail(status);
}

std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << file << "\n";
        std::exit(3);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot write " << file << "\n";
        std::exit(3);
    }
    out << content;
}

Graph load_graph_arg(const std::string& file) {
    qgeo_graph* g = nullptr;
    check_ok(qgeo_graph_load(file.c_str(), &g));
    return Graph(g);
}

Path load_path_arg(const qgeo_graph* g, const std::string& file) {
    qgeo_path* p = nullptr;
    check_ok(qgeo_path_load(g, file.c_str(), &p));
    return Path(p);
}

json params_from_kv(const std::vector<std::string>& kvs) {
    json out = json::object();
    for (const std::string& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --param expects name=value, got '" << kv << "'\n";
            std::exit(3);
        }
        out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return out;
}

void emit_report(const std::string& report, const std::string& out_file,
                 const std::string& format) {
    bool want_json = format.find("json") != std::string::npos;
    bool want_csv = format.find("csv") != std::string::npos;
    if (out_file.empty()) {
        if (want_csv && !want_json) {
            ApiString csv;
            char* raw = nullptr;
            check_ok(qgeo_render_csv(report.c_str(), &raw));
            csv.reset(raw);
            std::cout << csv.get();
        } else {
            std::cout << report;
        }
        return;
    }
    if (want_json) spit(out_file + (out_file.ends_with(".json") ? "" : ".json"), report);
    if (want_csv) {
        char* raw = nullptr;
        check_ok(qgeo_render_csv(report.c_str(), &raw));
        ApiString csv(raw);
        std::string base = out_file.ends_with(".json") ? out_file.substr(0, out_file.size() - 5)
                                                       : out_file;
        spit(base + ".csv", csv.get());
    }
}

int scenario_exit_code(const std::string& summary) {
    json j = json::parse(summary, nullptr, false);
    if (j.is_discarded()) return 3;
    bool coherent = j.value("all_coherent", false);
    return coherent ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph discretizations of geodesic metric spaces and empirical classification "
                 "of their paths (contraction, stability, divergence)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qgeo_version()));

    // --- zoo ------------------------------------------------------------------
    auto* zoo = app.add_subcommand("zoo", "list or build the benchmark spaces");
    zoo->require_subcommand(1);
    auto* zoo_list = zoo->add_subcommand("list", "print available families and parameters");
    auto* zoo_build = zoo->add_subcommand("build", "build a family and write its graph JSON");
    std::string family, zoo_out, zoo_path_out;
    std::vector<std::string> zoo_params;
    std::uint64_t budget_cap = 0;
    zoo_build->add_option("--family", family, "family name")->required();
    zoo_build->add_option("--param", zoo_params, "builder parameter name=value (repeatable)");
    zoo_build->add_option("--out", zoo_out, "output graph file")->required();
    zoo_build->add_option("--base-path-out", zoo_path_out, "also write the base path JSON");
    zoo_build->add_option("--budget-cap", budget_cap, "vertex budget override");

    // --- check ----------------------------------------------------------------
    auto* check = app.add_subcommand("check", "validity suite on a graph");
    std::string check_graph, check_path, check_suite = "cat0", check_profile, check_out;
    std::string check_format = "csv,json";
    std::uint64_t check_seed = 1;
    json check_opts = json::object();
    check->add_option("--graph", check_graph, "graph JSON file")->required();
    check->add_option("--path", check_path, "project onto this path (default: a sampled geodesic)");
    check->add_option("--suite", check_suite, "suite name (cat0)");
    check->add_option("--tol-profile", check_profile, "tolerance profile (default: graph family)");
    check->add_option("--seed", check_seed, "sampling seed");
    check->add_option("--out", check_out, "report file base (stdout if omitted)");
    check->add_option("--format", check_format, "csv,json");
    bool check_uniqueness = false;
    check->add_flag("--uniqueness", check_uniqueness, "also run the geodesic uniqueness check");

    // --- classify ---------------------------------------------------------------
    auto* classify = app.add_subcommand("classify", "run path classifiers");
    std::string cls_graph, cls_path, cls_out, cls_format = "json";
    std::uint64_t cls_seed = 1;
    bool cls_all = false;
    classify->add_option("--graph", cls_graph, "graph JSON file")->required();
    classify->add_option("--path", cls_path, "path JSON file")->required();
    classify->add_option("--seed", cls_seed, "sampling seed");
    classify->add_option("--out", cls_out, "report file (stdout if omitted)");
    classify->add_option("--format", cls_format, "csv,json");
    classify->add_flag("--all", cls_all, "run contraction, divergence and stability search");

    auto* c_contract = classify->add_subcommand("contract", "contraction scan");
    double opt_b = 1.0;
    std::vector<double> opt_ladder;
    std::uint64_t opt_budget = 0;
    c_contract->add_option("--b", opt_b, "trigger fraction b in (0,1]");
    c_contract->add_option("--ladder", opt_ladder, "tier radii (comma separated)")->delimiter(',');
    c_contract->add_option("--budget", opt_budget, "x-sample budget");

    auto* c_diverge = classify->add_subcommand("diverge", "punctured detour profile");
    std::vector<double> opt_radii;
    c_diverge->add_option("--radii", opt_radii, "radii (comma separated)")->delimiter(',');

    auto* c_morse = classify->add_subcommand("morse", "adversarial stability search");
    double opt_K = 3.0, opt_L = 2.0;
    std::vector<double> opt_scales;
    std::uint64_t morse_budget = 0;
    c_morse->add_option("--K", opt_K, "multiplicative constant");
    c_morse->add_option("--L", opt_L, "additive constant");
    c_morse->add_option("--scales", opt_scales, "endpoint separations")->delimiter(',');
    c_morse->add_option("--budget", morse_budget, "candidate budget");

    auto* c_dissect = classify->add_subcommand("dissect", "detour dissection witness");
    c_dissect->alias("lemma31");
    double dissect_r = 0.0;
    c_dissect->add_option("--r", dissect_r, "detour radius")->required();

    // --- matrix / run --------------------------------------------------------------
    auto* matrix = app.add_subcommand("matrix", "full zoo equivalence matrix");
    auto* run = app.add_subcommand("run", "run a scenario config");
    std::string cfg_file, run_out;
    std::uint64_t run_seed = 0;
    bool have_seed = false;
    std::uint64_t run_budget = 0;
    for (CLI::App* cmd : {matrix, run}) {
        cmd->add_option("--config", cfg_file, "scenario config JSON (defaults if omitted)");
        cmd->add_option("--out", run_out, "output directory");
        cmd->add_option_function<std::uint64_t>(
               "--seed", [&](const std::uint64_t& s) { run_seed = s; have_seed = true; },
               "seed override");
        cmd->add_option("--budget-cap", run_budget, "vertex budget override");
    }

    CLI11_PARSE(app, argc, argv);

    if (zoo_list->parsed()) {
        char* raw = nullptr;
        check_ok(qgeo_zoo_list(&raw));
        ApiString text(raw);
        std::cout << text.get();
        return 0;
    }

    if (zoo_build->parsed()) {
        json params = params_from_kv(zoo_params);
        if (budget_cap > 0) params["budget_cap"] = budget_cap;
        qgeo_graph* g = nullptr;
        qgeo_path* p = nullptr;
        check_ok(qgeo_zoo_build(family.c_str(), params.dump().c_str(), &g,
                                zoo_path_out.empty() ? nullptr : &p, nullptr));
        Graph graph(g);
        Path base(p);
        check_ok(qgeo_graph_save(graph.get(), zoo_out.c_str()));
        if (!zoo_path_out.empty()) {
            char* raw = nullptr;
            check_ok(qgeo_path_to_json(graph.get(), base.get(), &raw));
            ApiString text(raw);
            spit(zoo_path_out, text.get());
        }
        std::cout << "wrote " << zoo_out << " (" << qgeo_graph_vertex_count(graph.get())
                  << " vertices, " << qgeo_graph_edge_count(graph.get()) << " edges)\n";
        return 0;
    }

    if (check->parsed()) {
        if (check_suite != "cat0") {
            std::cerr << "error: unknown suite '" << check_suite << "'\n";
            return 3;
        }
        Graph g = load_graph_arg(check_graph);
        Path p;
        if (!check_path.empty()) p = load_path_arg(g.get(), check_path);
        check_opts["seed"] = check_seed;
        if (!check_profile.empty()) check_opts["tol_profile"] = check_profile;
        if (check_uniqueness) check_opts["run_uniqueness"] = true;
        char* raw = nullptr;
        check_ok(qgeo_check_cat0(g.get(), p.get(), check_opts.dump().c_str(), &raw));
        ApiString report(raw);
        emit_report(report.get(), check_out, check_format);
        json parsed = json::parse(report.get());
        return parsed.value("passed", false) ? 0 : 2;
    }

    if (classify->parsed()) {
        Graph g = load_graph_arg(cls_graph);
        Path p = load_path_arg(g.get(), cls_path);
        json opts;
        opts["seed"] = cls_seed;
        std::vector<std::string> which;
        if (cls_all || classify->get_subcommands().empty())
            which = {"contract", "diverge", "morse"};
        if (c_contract->parsed()) {
            which.push_back("contract");
            opts["b"] = opt_b;
            if (!opt_ladder.empty()) opts["ladder"] = opt_ladder;
            if (opt_budget > 0) opts["budget"] = opt_budget;
        }
        if (c_diverge->parsed()) {
            which.push_back("diverge");
            if (!opt_radii.empty()) opts["radii"] = opt_radii;
        }
        if (c_morse->parsed()) {
            which.push_back("morse");
            opts["K"] = opt_K;
            opts["L"] = opt_L;
            if (!opt_scales.empty()) opts["scales"] = opt_scales;
            if (morse_budget > 0) opts["budget"] = morse_budget;
        }
        if (c_dissect->parsed()) {
            which.push_back("dissect");
            opts["dissect_r"] = dissect_r;
        }
        opts["which"] = which;
        char* raw = nullptr;
        check_ok(qgeo_classify(g.get(), p.get(), opts.dump().c_str(), &raw));
        ApiString report(raw);
        emit_report(report.get(), cls_out, cls_format);
        return 0;
    }

    if (matrix->parsed() || run->parsed()) {
        json cfg;
        if (!cfg_file.empty()) {
            cfg = json::parse(slurp(cfg_file), nullptr, false);
            if (cfg.is_discarded()) {
                std::cerr << "error: config is not valid JSON\n";
                return 3;
            }
        } else {
            cfg = json::object();
            cfg["seed"] = 7;  // the built-in default scenario
        }
        if (have_seed) cfg["seed"] = run_seed;
        if (!run_out.empty()) cfg["out_dir"] = run_out;
        if (run_budget > 0) cfg["budget_cap"] = run_budget;
        char* raw = nullptr;
        qgeo_status status = qgeo_run_scenario(cfg.dump().c_str(), &raw);
        if (status != QGEO_OK) fail(status);
        ApiString summary(raw);
        std::cout << summary.get();
        return scenario_exit_code(summary.get());
    }

    return 0;
}
