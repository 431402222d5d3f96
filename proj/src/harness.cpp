#include "qgeo/harness.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "qgeo/errors.hpp"
#include "qgeo/json_io.hpp"
#include "qgeo/rng.hpp"

namespace qgeo {

namespace fs = std::filesystem;

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
    return buf;
}

} // namespace

const char* library_version() { return "0.1.0"; }

// --- config -----------------------------------------------------------------------

ScenarioConfig ScenarioConfig::defaults() {
    ScenarioConfig cfg;
    cfg.seed = 7;
    cfg.out_dir = "qgeo_run";

    auto entry = [](std::string family, std::vector<std::pair<std::string, double>> build,
                    std::vector<double> radii, std::vector<double> ladder,
                    std::vector<double> scales, double K, double L) {
        FamilyRunParams p;
        p.family = std::move(family);
        p.build_params = std::move(build);
        p.divergence_radii = std::move(radii);
        p.contraction_ladder = std::move(ladder);
        p.morse_scales = std::move(scales);
        p.morse_constants = {K, L};
        return p;
    };

    cfg.entries.push_back(entry("euclidean_plane", {{"halfwidth", 120.0}, {"h", 1.0}},
                                {20, 30, 45, 70}, {10, 20, 40}, {30, 45, 60}, 3.0, 2.0));
    cfg.entries.push_back(entry("hyperbolic_plane", {{"max_r", 7.0}, {"h", 0.25}},
                                {2, 3, 4, 5, 6}, {1.5, 2.5, 4.0}, {4, 6, 8}, 3.0, 0.5));
    cfg.entries.push_back(entry("regular_tree", {{"degree", 3.0}, {"depth", 12.0}},
                                {2, 4, 6, 8}, {2, 3, 5}, {8, 12, 16}, 3.0, 2.0));
    cfg.entries.push_back(entry("plane_wedge", {{"halfwidth", 120.0}, {"h", 1.0}},
                                {15, 25, 40, 60}, {10, 20, 40}, {30, 45, 60}, 3.0, 2.0));
    cfg.entries.push_back(entry("strip_glued_hyperbolic",
                                {{"max_r", 7.0}, {"strip_halfwidth", 8.0}, {"h", 0.25}},
                                {2, 3, 4, 5, 6}, {2, 3, 5}, {3, 4.5, 6}, 3.0, 0.5));
    cfg.entries.push_back(entry("tree_cross_line",
                                {{"degree", 3.0}, {"depth", 9.0}, {"halfwidth", 12.0}, {"h", 1.0}},
                                {2, 3, 4, 6}, {3, 5, 8}, {4, 6, 8}, 3.0, 1.0));
    return cfg;
}

nlohmann::json ScenarioConfig::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["write_csv"] = write_csv;
    j["write_json"] = write_json;
    j["write_graphs"] = write_graphs;
    j["run_checks"] = run_checks;
    j["budget_cap"] = budget_cap;
    j["b_values"] = b_values;
    j["entries"] = nlohmann::json::array();
    for (const FamilyRunParams& e : entries) {
        nlohmann::json ej;
        ej["family"] = e.family;
        nlohmann::json bp = nlohmann::json::object();
        for (const auto& [k, v] : e.build_params) bp[k] = v;
        ej["build_params"] = bp;
        ej["divergence_radii"] = e.divergence_radii;
        ej["contraction_ladder"] = e.contraction_ladder;
        ej["contraction_budget"] = e.contraction_budget;
        ej["morse_scales"] = e.morse_scales;
        ej["morse_K"] = e.morse_constants.K;
        ej["morse_L"] = e.morse_constants.L;
        ej["morse_restarts"] = e.morse_restarts;
        ej["checks"] = {{"triangle_samples", e.checks.triangle_samples},
                        {"interior_samples", e.checks.interior_samples},
                        {"convexity_pairs", e.checks.convexity_pairs},
                        {"t_samples", e.checks.t_samples},
                        {"projection_pairs", e.checks.projection_pairs},
                        {"uniqueness_pairs", e.checks.uniqueness_pairs},
                        {"run_uniqueness", e.checks.run_uniqueness}};
        j["entries"].push_back(ej);
    }
    return j;
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
    try {
        if (!j.contains("seed"))
            throw InputError("scenario config must carry an explicit seed (field 'seed')");
        ScenarioConfig cfg = defaults();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
        if (j.contains("write_csv")) cfg.write_csv = j.at("write_csv").get<bool>();
        if (j.contains("write_json")) cfg.write_json = j.at("write_json").get<bool>();
        if (j.contains("write_graphs")) cfg.write_graphs = j.at("write_graphs").get<bool>();
        if (j.contains("run_checks")) cfg.run_checks = j.at("run_checks").get<bool>();
        if (j.contains("budget_cap")) cfg.budget_cap = j.at("budget_cap").get<std::size_t>();
        if (j.contains("b_values")) cfg.b_values = j.at("b_values").get<std::vector<double>>();
        if (j.contains("entries")) {
            cfg.entries.clear();
            for (const auto& ej : j.at("entries")) {
                FamilyRunParams e;
                e.family = ej.at("family").get<std::string>();
                // unspecified knobs inherit the family defaults
                for (const FamilyRunParams& d : defaults().entries)
                    if (d.family == e.family) e = d;
                if (ej.contains("build_params")) {
                    e.build_params.clear();
                    for (auto it = ej["build_params"].begin(); it != ej["build_params"].end(); ++it)
                        e.build_params.emplace_back(it.key(), it.value().get<double>());
                }
                if (ej.contains("divergence_radii"))
                    e.divergence_radii = ej["divergence_radii"].get<std::vector<double>>();
                if (ej.contains("contraction_ladder"))
                    e.contraction_ladder = ej["contraction_ladder"].get<std::vector<double>>();
                if (ej.contains("contraction_budget"))
                    e.contraction_budget = ej["contraction_budget"].get<std::size_t>();
                if (ej.contains("morse_scales"))
                    e.morse_scales = ej["morse_scales"].get<std::vector<double>>();
                if (ej.contains("morse_K")) e.morse_constants.K = ej["morse_K"].get<double>();
                if (ej.contains("morse_L")) e.morse_constants.L = ej["morse_L"].get<double>();
                if (ej.contains("morse_restarts"))
                    e.morse_restarts = ej["morse_restarts"].get<std::size_t>();
                if (ej.contains("checks")) {
                    const auto& c = ej["checks"];
                    if (c.contains("triangle_samples"))
                        e.checks.triangle_samples = c["triangle_samples"].get<std::size_t>();
                    if (c.contains("interior_samples"))
                        e.checks.interior_samples = c["interior_samples"].get<std::size_t>();
                    if (c.contains("convexity_pairs"))
                        e.checks.convexity_pairs = c["convexity_pairs"].get<std::size_t>();
                    if (c.contains("t_samples"))
                        e.checks.t_samples = c["t_samples"].get<std::size_t>();
                    if (c.contains("projection_pairs"))
                        e.checks.projection_pairs = c["projection_pairs"].get<std::size_t>();
                    if (c.contains("uniqueness_pairs"))
                        e.checks.uniqueness_pairs = c["uniqueness_pairs"].get<std::size_t>();
                    if (c.contains("run_uniqueness"))
                        e.checks.run_uniqueness = c["run_uniqueness"].get<bool>();
                }
                cfg.entries.push_back(std::move(e));
            }
        }
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad scenario config: ") + e.what());
    }
}

// --- equivalence matrix --------------------------------------------------------------

namespace {

bool conclusive(ContractionVerdict v) { return v != ContractionVerdict::Inconclusive; }
bool conclusive(MorseVerdict v) { return v != MorseVerdict::Inconclusive; }
bool conclusive(DivergenceClass c) { return c != DivergenceClass::Inconclusive; }

} // namespace

EquivalenceMatrix equivalence_matrix(const std::vector<EntryVerdicts>& entries) {
    if (entries.empty()) throw InputError("equivalence matrix needs at least one entry");
    EquivalenceMatrix matrix;
    for (const EntryVerdicts& e : entries) {
        MatrixRow row;
        row.family = e.family;
        row.contracting_b1 = e.contraction_b1.verdict;
        row.contracting_bhalf = e.contraction_bhalf.verdict;
        row.morse = e.morse.verdict;
        row.divergence = e.divergence.klass;
        row.divergence_exponent = e.divergence.fit_exponent;

        const bool c1 = conclusive(row.contracting_b1);
        const bool ch = conclusive(row.contracting_bhalf);
        const bool m = conclusive(row.morse);
        const bool d = conclusive(row.divergence);
        row.evaluable = c1 || ch || m || d;

        // Pairwise coherence between conclusive verdicts only; abstentions
        // are reported, never coerced.
        if (c1 && m) {
            bool contracting = row.contracting_b1 == ContractionVerdict::Contracting;
            bool morse = row.morse == MorseVerdict::MorseAtScale;
            if (contracting != morse)
                row.incoherences.push_back("contracting(b=1) and morse verdicts disagree");
        }
        if (c1 && ch && row.contracting_b1 != row.contracting_bhalf)
            row.incoherences.push_back("contraction verdicts at b=1 and b=1/2 disagree");
        if (c1 && d && row.contracting_b1 == ContractionVerdict::Contracting &&
            row.divergence != DivergenceClass::AtLeastQuadratic &&
            row.divergence != DivergenceClass::Infinite)
            row.incoherences.push_back("contracting path without at-least-quadratic divergence");
        if (m && d && row.morse == MorseVerdict::MorseAtScale &&
            row.divergence == DivergenceClass::Linear)
            row.incoherences.push_back("morse path with linear divergence");
        row.coherent = row.incoherences.empty();

        auto expect = [&](bool yes, ContractionVerdict got, const char* label) {
            ContractionVerdict want =
                yes ? ContractionVerdict::Contracting : ContractionVerdict::NotContracting;
            if (got != want)
                row.mismatches.push_back(std::string(label) + ": expected " + to_string(want) +
                                         ", observed " + to_string(got));
        };
        expect(e.expected.contracting, row.contracting_b1, "contracting(b=1)");
        expect(e.expected.contracting, row.contracting_bhalf, "contracting(b=1/2)");
        MorseVerdict want_morse =
            e.expected.morse ? MorseVerdict::MorseAtScale : MorseVerdict::NotMorse;
        if (row.morse != want_morse)
            row.mismatches.push_back(std::string("morse: expected ") + to_string(want_morse) +
                                     ", observed " + to_string(row.morse));
        if (row.divergence != e.expected.divergence)
            row.mismatches.push_back(std::string("divergence: expected ") +
                                     to_string(e.expected.divergence) + ", observed " +
                                     to_string(row.divergence));
        row.matches_expected = row.mismatches.empty();
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

bool EquivalenceMatrix::all_coherent() const {
    for (const MatrixRow& r : rows)
        if (!r.coherent || !r.evaluable) return false;
    return true;
}

bool EquivalenceMatrix::all_match_expected() const {
    for (const MatrixRow& r : rows)
        if (!r.matches_expected) return false;
    return true;
}

nlohmann::json EquivalenceMatrix::to_json() const {
    nlohmann::json j;
    j["kind"] = "matrix";
    j["all_coherent"] = all_coherent();
    j["all_match_expected"] = all_match_expected();
    j["rows"] = nlohmann::json::array();
    for (const MatrixRow& r : rows) {
        nlohmann::json rj;
        rj["family"] = r.family;
        rj["contracting_b1"] = to_string(r.contracting_b1);
        rj["contracting_bhalf"] = to_string(r.contracting_bhalf);
        rj["morse"] = to_string(r.morse);
        rj["divergence_class"] = to_string(r.divergence);
        if (std::isinf(r.divergence_exponent)) rj["divergence_exponent"] = "infinity";
        else rj["divergence_exponent"] = r.divergence_exponent;
        rj["coherent"] = r.coherent;
        rj["evaluable"] = r.evaluable;
        rj["matches_expected"] = r.matches_expected;
        rj["incoherences"] = r.incoherences;
        rj["mismatches"] = r.mismatches;
        j["rows"].push_back(rj);
    }
    return j;
}

std::string EquivalenceMatrix::to_csv() const {
    std::string out = "family,contracting_b1,contracting_bhalf,morse,divergence_class,"
                      "divergence_exponent,coherent,matches_expected\n";
    for (const MatrixRow& r : rows) {
        out += r.family;
        out += ',';
        out += to_string(r.contracting_b1);
        out += ',';
        out += to_string(r.contracting_bhalf);
        out += ',';
        out += to_string(r.morse);
        out += ',';
        out += to_string(r.divergence);
        out += ',';
        out += std::isinf(r.divergence_exponent) ? "inf" : fmt_double(r.divergence_exponent);
        out += ',';
        out += r.coherent ? "true" : "false";
        out += ',';
        out += r.matches_expected ? "true" : "false";
        out += '\n';
    }
    return out;
}

// --- CSV rendering -------------------------------------------------------------------

namespace {

std::string check_suite_csv(const nlohmann::json& j) {
    std::string out = "name,samples,worst_violation,tolerance_used,conclusive,passed\n";
    for (const auto& r : j.at("reports")) {
        out += r.at("name").get<std::string>();
        out += ',' + std::to_string(r.at("samples").get<std::size_t>());
        out += ',' + fmt_double(r.at("worst_violation").get<double>());
        out += ',' + fmt_double(r.at("tolerance_used").get<double>());
        out += r.at("conclusive").get<bool>() ? ",true" : ",false";
        out += r.at("passed").get<bool>() ? ",true\n" : ",false\n";
    }
    return out;
}

std::string contraction_csv(const nlohmann::json& j) {
    std::string out = "b,radius,c_hat,x_samples,pair_samples,verdict\n";
    std::string b = fmt_double(j.at("b").get<double>());
    std::string verdict = j.at("verdict").get<std::string>();
    for (const auto& t : j.at("tiers")) {
        out += b;
        out += ',' + fmt_double(t.at("radius").get<double>());
        out += ',' + fmt_double(t.at("c_hat").get<double>());
        out += ',' + std::to_string(t.at("x_samples").get<std::size_t>());
        out += ',' + std::to_string(t.at("pair_samples").get<std::size_t>());
        out += ',' + verdict + '\n';
    }
    return out;
}

std::string divergence_csv(const nlohmann::json& j) {
    std::string out = "r,detour,class,fit_exponent\n";
    std::string klass = j.at("class").get<std::string>();
    std::string expo = j.at("fit_exponent").is_string() ? "inf"
                                                        : fmt_double(j.at("fit_exponent").get<double>());
    const auto& radii = j.at("radii");
    const auto& detour = j.at("detour");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        out += fmt_double(radii[i].get<double>());
        out += ',';
        out += detour[i].is_null() ? "UNREACHABLE" : fmt_double(detour[i].get<double>());
        out += ',' + klass + ',' + expo + '\n';
    }
    return out;
}

std::string morse_csv(const nlohmann::json& j) {
    std::string out = "scale,worst_wander,found_candidate,verdict\n";
    std::string verdict = j.at("verdict").get<std::string>();
    for (const auto& s : j.at("scales")) {
        out += fmt_double(s.at("scale").get<double>());
        out += ',' + fmt_double(s.at("worst_wander").get<double>());
        out += s.at("found_candidate").get<bool>() ? ",true" : ",false";
        out += ',' + verdict + '\n';
    }
    return out;
}

std::string matrix_csv_from_json(const nlohmann::json& j) {
    std::string out = "family,contracting_b1,contracting_bhalf,morse,divergence_class,"
                      "divergence_exponent,coherent,matches_expected\n";
    for (const auto& r : j.at("rows")) {
        out += r.at("family").get<std::string>();
        out += ',' + r.at("contracting_b1").get<std::string>();
        out += ',' + r.at("contracting_bhalf").get<std::string>();
        out += ',' + r.at("morse").get<std::string>();
        out += ',' + r.at("divergence_class").get<std::string>();
        out += ',';
        out += r.at("divergence_exponent").is_string()
                   ? "inf"
                   : fmt_double(r.at("divergence_exponent").get<double>());
        out += r.at("coherent").get<bool>() ? ",true" : ",false";
        out += r.at("matches_expected").get<bool>() ? ",true\n" : ",false\n";
    }
    return out;
}

std::string key_value_csv(const nlohmann::json& j) {
    std::string out = "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_structured()) continue;
        out += it.key();
        out += ',';
        if (it.value().is_number_float()) out += fmt_double(it.value().get<double>());
        else out += it.value().dump();
        out += '\n';
    }
    return out;
}

} // namespace

std::string render_csv(const nlohmann::json& report) {
    std::string kind = report.value("kind", "");
    if (kind == "check_suite") return check_suite_csv(report);
    if (kind == "contraction") return contraction_csv(report);
    if (kind == "divergence") return divergence_csv(report);
    if (kind == "morse") return morse_csv(report);
    if (kind == "matrix") return matrix_csv_from_json(report);
    if (kind == "dissection" || kind == "check") return key_value_csv(report);
    if (kind == "classify_bundle") {
        std::string out;
        for (const char* part : {"contraction", "contraction_bhalf", "divergence", "morse",
                                 "dissection"}) {
            if (!report.contains(part)) continue;
            out += std::string("# ") + part + "\n";
            out += render_csv(report.at(part));
        }
        return out;
    }
    throw InputError("cannot render CSV for report kind '" + kind + "'");
}

// --- plot data ------------------------------------------------------------------------

std::vector<std::string> emit_plot_data(const DivergenceProfile& profile, const std::string& out) {
    std::string dat = "# r detour\n";
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        if (profile.detour[i])
            dat += fmt_double(profile.radii[i]) + " " + fmt_double(*profile.detour[i]) + "\n";
        else
            dat += "# " + fmt_double(profile.radii[i]) + " UNREACHABLE\n";
    }
    write_text_file(out + ".dat", dat);

    std::string loglog = "# log(r) log(detour)\n";
    loglog += "# fit: exponent=" +
              (std::isinf(profile.fit_exponent) ? std::string("inf")
                                                : fmt_double(profile.fit_exponent)) +
              " r2=" + fmt_double(profile.fit_quality) + " class=" + to_string(profile.klass) +
              "\n";
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        if (!profile.detour[i] || !(*profile.detour[i] > 0.0)) continue;
        loglog += fmt_double(std::log(profile.radii[i])) + " " +
                  fmt_double(std::log(*profile.detour[i])) + "\n";
    }
    write_text_file(out + "_loglog.dat", loglog);
    return {out + ".dat", out + "_loglog.dat"};
}

std::vector<std::string> emit_plot_data(const MorseReport& report, const std::string& out) {
    std::string dat = "# scale worst_wander\n";
    for (const MorseScaleResult& s : report.scales)
        dat += fmt_double(s.scale) + " " + fmt_double(s.worst_wander) + "\n";
    write_text_file(out + ".dat", dat);
    return {out + ".dat"};
}

// --- scenario runner -------------------------------------------------------------------

namespace {

struct ArtifactWriter {
    fs::path dir;
    std::vector<std::string> files;

    void write(const std::string& name, const std::string& content) {
        write_text_file((dir / name).string(), content);
        files.push_back(name);
    }
    void note_external(const std::string& name) { files.push_back(name); }
};

std::string b_suffix(double b) {
    // b in {1, 0.5, ...} -> "b100", "b050"
    int milli = static_cast<int>(std::llround(b * 100.0));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "b%03d", milli);
    return buf;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    if (cfg.out_dir.empty()) throw InputError("scenario config needs an out_dir");
    if (cfg.entries.empty()) throw InputError("scenario config has no entries");
    fs::create_directories(cfg.out_dir);
    ArtifactWriter out{fs::path(cfg.out_dir), {}};

    const nlohmann::json cfg_json = cfg.to_json();
    const std::string cfg_dump = cfg_json.dump(2) + "\n";
    // The hash covers the experiment definition; where the artifacts land is
    // not part of it.
    nlohmann::json hashed = cfg_json;
    hashed.erase("out_dir");
    const std::string cfg_hash = hex64(fnv1a64(hashed.dump()));
    out.write("config.json", cfg_dump);

    ScenarioResult result;
    std::vector<EntryVerdicts> verdicts;
    nlohmann::json check_summaries = nlohmann::json::array();

    try {
        for (const FamilyRunParams& params : cfg.entries) {
            Rng fam_rng = Rng(cfg.seed).derive(params.family);
            ZooEntry entry = build_zoo_entry(params.family, params.build_params, cfg.budget_cap);
            const std::string& fam = params.family;

            if (cfg.write_graphs) {
                out.write("graph_" + fam + ".json", graph_to_json_string(entry.graph));
                out.write("base_path_" + fam + ".json",
                          path_to_json(entry.graph, entry.base_path).dump(2) + "\n");
            }

            if (cfg.run_checks) {
                Cat0SuiteOptions copt = params.checks;
                copt.seed = fam_rng.derive("checks").next_u64();
                auto reports = run_cat0_suite(entry.graph, &entry.base_path, copt,
                                              tolerance_profile(fam));
                nlohmann::json suite;
                suite["kind"] = "check_suite";
                suite["family"] = fam;
                suite["reports"] = nlohmann::json::array();
                bool ok = true;
                for (const CheckReport& r : reports) {
                    suite["reports"].push_back(r.to_json());
                    ok &= r.passed();
                }
                result.checks_passed &= ok;
                check_summaries.push_back({{"family", fam}, {"passed", ok}});
                if (cfg.write_json) out.write("checks_" + fam + ".json", suite.dump(2) + "\n");
                if (cfg.write_csv) out.write("checks_" + fam + ".csv", render_csv(suite));
            }

            EntryVerdicts v;
            v.family = fam;
            v.expected = entry.expected;

            for (double b : cfg.b_values) {
                ContractionOptions copt;
                copt.b = b;
                copt.radius_ladder = params.contraction_ladder;
                copt.budget = params.contraction_budget;
                copt.seed = fam_rng.derive("contraction").derive(b_suffix(b)).next_u64();
                ContractionReport rep = contraction_scan(entry.graph, entry.base_path, copt);
                if (cfg.write_json)
                    out.write("contraction_" + fam + "_" + b_suffix(b) + ".json",
                              rep.to_json().dump(2) + "\n");
                if (cfg.write_csv)
                    out.write("contraction_" + fam + "_" + b_suffix(b) + ".csv",
                              render_csv(rep.to_json()));
                if (b == 1.0) v.contraction_b1 = rep;
                else if (b == 0.5) v.contraction_bhalf = rep;
            }

            v.divergence = divergence_profile(entry.graph, entry.base_path,
                                              params.divergence_radii,
                                              fam_rng.derive("divergence").next_u64());
            if (cfg.write_json)
                out.write("divergence_" + fam + ".json", v.divergence.to_json().dump(2) + "\n");
            if (cfg.write_csv)
                out.write("divergence_" + fam + ".csv", render_csv(v.divergence.to_json()));
            for (const std::string& f :
                 emit_plot_data(v.divergence, (out.dir / ("divergence_" + fam)).string()))
                out.note_external(fs::path(f).filename().string());

            MorseOptions mopt;
            mopt.constants = params.morse_constants;
            mopt.scales = params.morse_scales;
            mopt.restarts = params.morse_restarts;
            mopt.seed = fam_rng.derive("morse").next_u64();
            if (v.contraction_b1.verdict == ContractionVerdict::Contracting)
                mopt.contraction_bc = {{1.0, std::max(v.contraction_b1.c_hat,
                                                      entry.graph.scale()) * 1.1}};
            MorseReport mrep = morse_adversarial_search(entry.graph, entry.base_path, mopt);
            v.morse = mrep;
            if (cfg.write_json) out.write("morse_" + fam + ".json", mrep.to_json().dump(2) + "\n");
            if (cfg.write_csv) out.write("morse_" + fam + ".csv", render_csv(mrep.to_json()));
            for (const std::string& f :
                 emit_plot_data(mrep, (out.dir / ("morse_" + fam)).string()))
                out.note_external(fs::path(f).filename().string());

            verdicts.push_back(std::move(v));
        }

        result.matrix = equivalence_matrix(verdicts);
        out.write("matrix.json", result.matrix.to_json().dump(2) + "\n");
        out.write("matrix.csv", result.matrix.to_csv());
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["kind"] = "error_report";
        err["error"] = e.what();
        err["partial_files"] = out.files;
        write_text_file((out.dir / "error_report.json").string(), err.dump(2) + "\n");
        throw;
    }

    nlohmann::json summary;
    summary["kind"] = "scenario_summary";
    summary["config_hash"] = cfg_hash;
    summary["version"] = library_version();
    summary["all_coherent"] = result.matrix.all_coherent();
    summary["all_match_expected"] = result.matrix.all_match_expected();
    summary["checks_passed"] = result.checks_passed;
    summary["checks"] = check_summaries;
    summary["matrix"] = result.matrix.to_json();
    out.write("summary.json", summary.dump(2) + "\n");
    result.summary = summary;

    // Manifest last: every artifact with size and content hash.
    std::sort(out.files.begin(), out.files.end());
    nlohmann::json manifest;
    manifest["kind"] = "manifest";
    manifest["config_hash"] = cfg_hash;
    manifest["versions"] = {{"qgeo", library_version()}, {"report_format", 1}};
    manifest["files"] = nlohmann::json::array();
    for (const std::string& name : out.files) {
        std::string content = read_text_file((out.dir / name).string());
        manifest["files"].push_back({{"name", name},
                                     {"bytes", content.size()},
                                     {"fnv1a64", hex64(fnv1a64(content))}});
    }
    write_text_file((out.dir / "manifest.json").string(), manifest.dump(2) + "\n");
    result.files = out.files;
    result.files.push_back("manifest.json");
    return result;
}

} // namespace qgeo
