#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tilecoh/cohomology.hpp"
#include "tilecoh/complex.hpp"
#include "tilecoh/limits.hpp"
#include "tilecoh/patches.hpp"
#include "tilecoh/substitution.hpp"

namespace tilecoh {

struct AnalysisOptions {
    std::string complex = "dual";  // "dual" or "ap-uncollared"
    bool assume_border = false;
    int max_degree = -1;  // -1: the rule dimension
    bool ring = false;
    bool chern = false;
    std::vector<std::pair<Int, int>> probes;  // (p, depth)
    std::optional<nlohmann::json> quotient;   // cell involution document
    std::optional<SubstitutionRule> product;
    // Replace the rule by its induced rule on 2^d windows (optionally divided
    // by the window involution induced from a color involution).
    bool derive_windows = false;
    int derive_shift = -1;
    std::optional<ColorInvolution> color_quotient;
    int border_probe_levels = 0;
    bool per_dimension_frequency = true;
    int threads = 1;
};

// Every intermediate object of one analysis run. Not movable: the engine
// refers to the complex.
struct Pipeline {
    SubstitutionRule rule;
    WindowLanguage language;
    CellComplexData complex;
    CellMap map;
    std::unique_ptr<CohomologyEngine> engine;
    nlohmann::json timings = nlohmann::json::object();

    Pipeline() = default;
    Pipeline(const Pipeline&) = delete;
    Pipeline& operator=(const Pipeline&) = delete;
};

// Rule preparation (product, window derivation), windows, complex, chain map,
// optional quotient; the engine is created but no cohomology is computed.
std::unique_ptr<Pipeline> build_pipeline(const SubstitutionRule& rule, const AnalysisOptions& opts);

// Full report; timing data only under "diagnostics".
nlohmann::json analyze(const SubstitutionRule& rule, const AnalysisOptions& opts);
nlohmann::json analyze(Pipeline& pipeline, const AnalysisOptions& opts);

// "builtin:name", a bare builtin name, or a path to a rule JSON file.
SubstitutionRule resolve_rule(const std::string& spec);

// Parses "p:K" (K >= 1).
std::pair<Int, int> parse_probe(const std::string& text);
// Parses a comma-separated color permutation such as "1,0".
ColorInvolution parse_color_involution(const std::string& text);

nlohmann::json group_to_json(const FgAbGroup& group);

}  // namespace tilecoh
