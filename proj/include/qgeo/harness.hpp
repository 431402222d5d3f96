#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgeo/cat0.hpp"
#include "qgeo/classifiers.hpp"
#include "qgeo/types.hpp"
#include "qgeo/zoo.hpp"

namespace qgeo {

// Per-family classifier parameters for a scenario run. Defaults are the desk
// scale that keeps the whole zoo under a few minutes.
struct FamilyRunParams {
    std::string family;
    std::vector<std::pair<std::string, double>> build_params;
    std::vector<double> divergence_radii;
    std::vector<double> contraction_ladder;
    std::size_t contraction_budget = 96;
    std::vector<double> morse_scales;
    QuasiGeodesicConstants morse_constants{3.0, 2.0};
    std::size_t morse_restarts = 3;
    Cat0SuiteOptions checks;
};

struct ScenarioConfig {
    std::uint64_t seed = 0;   // mandatory; parse rejects configs without it
    std::string out_dir;
    bool write_csv = true;
    bool write_json = true;
    bool write_graphs = true;
    bool run_checks = true;
    std::size_t budget_cap = kDefaultVertexBudget;
    std::vector<double> b_values{1.0, 0.5};
    std::vector<FamilyRunParams> entries;

    static ScenarioConfig defaults();                  // full zoo, desk scale
    static ScenarioConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Verdict row of the equivalence matrix, plus the coherence flags the main
// equivalence theorem requires of any one path.
struct MatrixRow {
    std::string family;
    ContractionVerdict contracting_b1 = ContractionVerdict::Inconclusive;
    ContractionVerdict contracting_bhalf = ContractionVerdict::Inconclusive;
    MorseVerdict morse = MorseVerdict::Inconclusive;
    DivergenceClass divergence = DivergenceClass::Inconclusive;
    double divergence_exponent = 0.0;
    bool coherent = true;         // no two conclusive verdicts contradict
    bool evaluable = true;        // false when too many inconclusives
    bool matches_expected = true;
    std::vector<std::string> incoherences;
    std::vector<std::string> mismatches;
};

struct EquivalenceMatrix {
    std::vector<MatrixRow> rows;
    bool all_coherent() const;
    bool all_match_expected() const;
    nlohmann::json to_json() const;
    std::string to_csv() const;
};

struct EntryVerdicts {
    std::string family;
    ExpectedClassification expected;
    ContractionReport contraction_b1;
    ContractionReport contraction_bhalf;
    MorseReport morse;
    DivergenceProfile divergence;
};

EquivalenceMatrix equivalence_matrix(const std::vector<EntryVerdicts>& entries);

struct ScenarioResult {
    EquivalenceMatrix matrix;
    std::vector<std::string> files;   // relative names, sorted
    bool checks_passed = true;
    nlohmann::json summary;           // what run_scenario also writes to disk
};

// Builds each configured entry, runs checks and all classifiers, and writes a
// deterministic artifact set (graph JSON, per-classifier reports, matrix
// CSV/JSON, manifest with content hashes) under cfg.out_dir. Identical config
// and seed produce byte-identical files.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Two-column plot data: "<out>.dat" with one "x y" line per point
// (unreachable entries as comment lines) and "<out>_loglog.dat" with the
// fitted line parameters in the header.
std::vector<std::string> emit_plot_data(const DivergenceProfile& profile, const std::string& out);
std::vector<std::string> emit_plot_data(const MorseReport& report, const std::string& out);

// CSV rendering for any report JSON produced by this library (dispatches on
// the "kind" field).
std::string render_csv(const nlohmann::json& report);

const char* library_version();

} // namespace qgeo
