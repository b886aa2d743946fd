#include "tilecoh/report.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "tilecoh/errors.hpp"
#include "tilecoh/frequency.hpp"
#include "tilecoh/parallel.hpp"
#include "tilecoh/ring.hpp"

namespace tilecoh {

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
public:
    StageTimer(nlohmann::json& sink, std::string name) : sink_(sink), name_(std::move(name)), start_(Clock::now()) {}
    ~StageTimer() {
        double s = std::chrono::duration<double>(Clock::now() - start_).count();
        sink_[name_] = sink_.value(name_, 0.0) + s;
    }

private:
    nlohmann::json& sink_;
    std::string name_;
    Clock::time_point start_;
};

nlohmann::json int_json(const Int& x) {
    return x.fits_int64() ? nlohmann::json(x.to_int64()) : nlohmann::json(x.to_string());
}

nlohmann::json matrix_json(const IntMatrix& m) { return nlohmann::json::parse(to_json_text(m)); }

IntVector unit_vector(size_t n, size_t i) {
    IntVector v(n);
    v[i] = 1;
    return v;
}

}  // namespace

nlohmann::json group_to_json(const FgAbGroup& group) {
    nlohmann::json tor = nlohmann::json::array();
    for (const auto& t : group.torsion) tor.push_back(int_json(t));
    return {{"description", group.describe()}, {"rank", group.rank}, {"torsion", tor}};
}

SubstitutionRule resolve_rule(const std::string& spec) {
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) return builtin_rule(spec.substr(prefix.size()));
    if (std::filesystem::exists(spec)) return load_rule_file(spec);
    if (builtin_rules().count(spec)) return builtin_rule(spec);
    throw UsageError("no rule file or builtin rule named '" + spec + "'");
}

std::pair<Int, int> parse_probe(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("probe must have the form p:K");
    try {
        Int p(text.substr(0, colon));
        int depth = std::stoi(text.substr(colon + 1));
        if (p < 2 || depth < 1) throw UsageError("probe needs p >= 2 and K >= 1");
        return {p, depth};
    } catch (const std::invalid_argument&) {
        throw UsageError("probe must have the form p:K");
    }
}

ColorInvolution parse_color_involution(const std::string& text) {
    ColorInvolution g;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            g.perm.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError("color involution must be a comma-separated permutation");
        }
    }
    return g;
}

std::unique_ptr<Pipeline> build_pipeline(const SubstitutionRule& input, const AnalysisOptions& opts) {
    set_thread_count(opts.threads);
    auto p = std::make_unique<Pipeline>();
    SubstitutionRule rule = opts.product ? product_rule(input, *opts.product) : input;
    {
        StageTimer t(p->timings, "primitivity");
        if (!primitivity_check(rule).primitive) throw NotPrimitive("substitution matrix of '" + rule.name + "' is not primitive");
    }
    if (opts.derive_windows) {
        StageTimer t(p->timings, "derive_windows");
        WindowLanguage base = enumerate_legal_windows(rule, {Shape(static_cast<size_t>(rule.d), 2)});
        SubstitutionRule derived = derive_window_rule(rule, base, opts.derive_shift);
        if (opts.color_quotient) {
            validate_involution(*opts.color_quotient, rule.m);
            derived = quotient_rule_by_involution(derived, induced_window_involution(base, rule.d, *opts.color_quotient));
        }
        rule = std::move(derived);
    } else if (opts.color_quotient) {
        throw UsageError("a color quotient needs window derivation");
    }
    p->rule = rule;
    const bool ap = opts.complex == "ap-uncollared";
    if (!ap && opts.complex != "dual") throw UsageError("unknown complex model '" + opts.complex + "'");
    {
        StageTimer t(p->timings, "windows");
        std::set<Shape> shapes;
        if (ap) {
            shapes = ap_shapes(rule.d);
        } else {
            for (const auto& s : dual_shapes(rule.d)) shapes.insert(s);
        }
        p->language = enumerate_legal_windows(rule, shapes);
    }
    {
        StageTimer t(p->timings, "complex");
        p->complex = ap ? build_ap_uncollared(rule, p->language, ApOptions{opts.assume_border})
                        : build_dual_complex(rule, p->language);
    }
    {
        StageTimer t(p->timings, "chain_map");
        p->map = induced_chain_map(rule, p->complex);
        assert_chain_map(p->complex, p->map);
    }
    if (opts.quotient) {
        StageTimer t(p->timings, "quotient");
        CellInvolution inv = parse_cell_involution(*opts.quotient, p->complex);
        QuotientResult q = quotient_by_involution(p->complex, inv, p->map);
        p->complex = std::move(q.complex);
        p->map = std::move(q.map);
    }
    p->engine = std::make_unique<CohomologyEngine>(p->complex);
    return p;
}

nlohmann::json analyze(const SubstitutionRule& rule, const AnalysisOptions& opts) {
    auto p = build_pipeline(rule, opts);
    return analyze(*p, opts);
}

nlohmann::json analyze(Pipeline& p, const AnalysisOptions& opts) {
    const SubstitutionRule& rule = p.rule;
    const CellComplexData& cx = p.complex;
    CohomologyEngine& engine = *p.engine;
    nlohmann::json& timings = p.timings;
    const int d = cx.d;
    const int top = opts.max_degree < 0 ? d : std::min(opts.max_degree, d);

    nlohmann::json report;
    auto prim = primitivity_check(rule);
    report["rule"] = {{"name", rule.name},
                      {"dimension", rule.d},
                      {"expansion", rule.lambda},
                      {"colors", rule.m},
                      {"primitive", prim.primitive},
                      {"primitivity_exponent", prim.exponent ? nlohmann::json(*prim.exponent) : nlohmann::json()},
                      {"forces_border", rule.forces_border ? nlohmann::json(*rule.forces_border) : nlohmann::json()},
                      {"assumed_recognizable", true}};

    nlohmann::json probes = nlohmann::json::array();
    for (const auto& [pr, depth] : opts.probes) probes.push_back({{"p", int_json(pr)}, {"depth", depth}});
    report["configuration"] = {{"complex", opts.complex},
                               {"assume_border", opts.assume_border},
                               {"max_degree", top},
                               {"ring", opts.ring},
                               {"chern", opts.chern},
                               {"probes", probes},
                               {"quotient", opts.quotient ? *opts.quotient : nlohmann::json()},
                               {"product", opts.product ? nlohmann::json(opts.product->name) : nlohmann::json()},
                               {"derive_windows", opts.derive_windows},
                               {"chain_map_shift", 0},
                               {"enumeration", {{"seed_level", p.language.seed_level}, {"passes", p.language.passes}}}};
    if (opts.derive_windows) {
        report["configuration"]["derive_shift"] = opts.derive_shift < 0 ? centered_shift(rule.lambda) : opts.derive_shift;
        if (opts.color_quotient) {
            nlohmann::json g = nlohmann::json::array();
            for (int x : opts.color_quotient->perm) g.push_back(x);
            report["configuration"]["color_quotient"] = g;
        }
    }

    if (opts.border_probe_levels > 0) {
        StageTimer t(timings, "border_probe");
        auto b = border_forcing_probe(rule, opts.border_probe_levels);
        report["border_probe"] = {{"forced", b.forced},
                                  {"level", b.level ? nlohmann::json(*b.level) : nlohmann::json()},
                                  {"max_level", opts.border_probe_levels},
                                  {"witness", b.witness ? nlohmann::json(*b.witness) : nlohmann::json()}};
    }

    {
        StageTimer t(timings, "verify_complex");
        auto diag = verify_complex(cx, &p.map);
        nlohmann::json betti = nlohmann::json::array();
        for (auto b : diag.betti) betti.push_back(b);
        report["complex"] = {{"model", model_name(cx.model)},
                             {"cell_counts", cx.counts()},
                             {"verification",
                              {{"boundary_squared_zero", diag.boundary_squared_zero},
                               {"chain_map", diag.chain_map_ok},
                               {"euler_cells", diag.euler_cells},
                               {"euler_betti", diag.euler_betti},
                               {"betti", betti},
                               {"first_violation",
                                diag.first_violation ? nlohmann::json(*diag.first_violation) : nlohmann::json()}}}};
    }

    std::map<int, std::unique_ptr<DirectLimitGroup>> limits;
    nlohmann::json degrees = nlohmann::json::array();
    for (int q = 0; q <= top; ++q) {
        nlohmann::json entry{{"degree", q}};
        const FgAbGroup* group = nullptr;
        {
            StageTimer t(timings, "cohomology");
            group = &engine.group(q);
        }
        entry["group"] = group_to_json(*group);
        IntMatrix phi;
        {
            StageTimer t(timings, "induced_maps");
            phi = induced_cohomology_map(engine, p.map, q);
        }
        if (phi.rows() <= 32) entry["induced_map"] = matrix_json(phi);
        {
            StageTimer t(timings, "limits");
            limits[q] = std::make_unique<DirectLimitGroup>(*group, phi);
        }
        const DirectLimitGroup& lim = *limits[q];
        entry["limit"] = lim.summary();
        if (!opts.probes.empty()) {
            StageTimer t(timings, "probes");
            nlohmann::json pj = nlohmann::json::array();
            for (const auto& [pr, depth] : opts.probes) {
                nlohmann::json gens = nlohmann::json::array();
                for (size_t i = 0; i < group->size(); ++i) {
                    LimitElement x{0, unit_vector(group->size(), i)};
                    nlohmann::json levels = nlohmann::json::array();
                    for (const auto& lv : divisibility_probe(lim, x, pr, depth))
                        levels.push_back({{"modulus", int_json(lv.modulus)}, {"divisible", lv.divisible}});
                    nlohmann::json g{{"generator", i}, {"levels", levels}};
                    if (auto cert = eigen_divisibility_certificate(lim, x, pr, depth)) {
                        nlohmann::json rel = nlohmann::json::array();
                        for (const auto& c : cert->relation) rel.push_back(int_json(c));
                        g["certificate"] = {{"kind", cert->kind},
                                            {"relation", rel},
                                            {"verified_depth", cert->verified_depth},
                                            {"explanation", cert->explanation}};
                    }
                    gens.push_back(std::move(g));
                }
                pj.push_back({{"p", int_json(pr)}, {"depth", depth}, {"generators", gens}});
            }
            entry["probes"] = pj;
        }
        degrees.push_back(std::move(entry));
    }
    report["cohomology"] = degrees;

    if (opts.ring) {
        StageTimer t(timings, "ring");
        nlohmann::json forms = nlohmann::json::array();
        for (int a = 1; a <= top; ++a)
            for (int b = a; a + b <= top; ++b) {
                try {
                    forms.push_back(bilinear_forms_by_eigenvalue(engine, p.map, a, b).to_json());
                } catch (const NotACocycle& e) {
                    // Quotient models carry cup products only where the cover product is invariant.
                    if (cx.model != ComplexModel::Quotient) throw;
                    forms.push_back({{"p", a}, {"q", b}, {"error", e.kind()}, {"message", e.what()}});
                }
            }
        report["cup_products"] = forms;
    }

    {
        StageTimer t(timings, "frequency");
        nlohmann::json fj{{"top", frequency_module(cx, p.map, rule.lambda).to_json()}};
        if (opts.per_dimension_frequency) {
            nlohmann::json per = nlohmann::json::object();
            for (int q = 1; q < d; ++q) {
                nlohmann::json blocks = nlohmann::json::array();
                for (const auto& fm : frequency_module_per_dimension(cx, p.map, rule.lambda, q)) blocks.push_back(fm.to_json());
                per[std::to_string(q)] = blocks;
            }
            fj["per_dimension"] = per;
            fj["per_dimension_status"] = "experimental";
        }
        report["frequency"] = fj;
    }

    if (opts.chern) {
        StageTimer t(timings, "chern");
        if (d != 4) throw WrongDimension("the Chern integrality check needs a 4-dimensional complex");
        if (limits.count(4)) {
            report["chern"] = chern_integrality_check(engine, p.map, *limits[4]).to_json();
        } else {
            report["chern"] = chern_integrality_check(engine, p.map).to_json();
        }
    }

    report["diagnostics"] = {{"timings_seconds", timings}, {"threads", opts.threads}};
    return report;
}

}  // namespace tilecoh
