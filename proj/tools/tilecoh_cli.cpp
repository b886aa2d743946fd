#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tilecoh/errors.hpp"
#include "tilecoh/report.hpp"

using namespace tilecoh;
namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::string rule;
    std::string complex = "dual";
    bool assume_border = false;
    std::string quotient;
    std::string product;
    bool derive = false;
    int shift = -1;
    std::string color_quotient;
    int threads = 1;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("rule", f.rule, "rule JSON file, builtin:name or a builtin name")->required();
    cmd->add_option("--complex", f.complex, "cell complex model")->check(CLI::IsMember({"dual", "ap-uncollared"}));
    cmd->add_flag("--assume-border", f.assume_border, "assert that the rule forces the border");
    cmd->add_option("--quotient", f.quotient, "cell involution JSON file");
    cmd->add_option("--product", f.product, "second rule for a product substitution");
    cmd->add_flag("--derive-windows", f.derive, "use the induced rule on 2^d windows");
    cmd->add_option("--shift", f.shift, "window offset of the derived rule (default: centered)");
    cmd->add_option("--color-quotient", f.color_quotient, "color involution such as 1,0 (with --derive-windows)");
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out, "output file (or directory for csv exports)");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

AnalysisOptions options_from(const CommonFlags& f) {
    AnalysisOptions o;
    o.complex = f.complex;
    o.assume_border = f.assume_border;
    if (!f.quotient.empty()) o.quotient = read_json_file(f.quotient);
    if (!f.product.empty()) o.product = resolve_rule(f.product);
    o.derive_windows = f.derive;
    o.derive_shift = f.shift;
    if (!f.color_quotient.empty()) o.color_quotient = parse_color_involution(f.color_quotient);
    o.threads = f.threads;
    return o;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write '" + path + "'");
    out << text;
}

std::string join(const std::vector<int>& v, char sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return s;
}

void export_windows(const Pipeline& p, const std::string& format, const std::string& out) {
    if (format == "json") {
        nlohmann::json shapes = nlohmann::json::array();
        for (const auto& s : p.language.shapes()) shapes.push_back({{"extents", s}, {"windows", p.language.windows(s)}});
        write_text(out, nlohmann::json{{"rule", p.rule.name}, {"dimension", p.rule.d}, {"shapes", shapes}}.dump(1) + "\n");
        return;
    }
    std::string csv = "id,extents,colors\n";
    for (const auto& w : p.language.all_windows())
        csv += std::to_string(w.id) + "," + join(w.extents, 'x') + "," + join(w.colors, ' ') + "\n";
    write_text(out, csv);
}

void write_csv_dir(const std::string& dir, const std::vector<std::pair<std::string, IntMatrix>>& files) {
    if (dir.empty()) throw UsageError("csv exports of several matrices need --out DIR");
    fs::create_directories(dir);
    for (const auto& [name, m] : files) write_text((fs::path(dir) / (name + ".csv")).string(), to_csv(m));
}

void export_complex(const Pipeline& p, const std::string& format, const std::string& out) {
    if (format == "json") {
        write_text(out, complex_to_json(p.complex, &p.map).dump(1) + "\n");
        return;
    }
    std::vector<std::pair<std::string, IntMatrix>> files;
    for (int q = 1; q <= p.complex.d; ++q)
        files.emplace_back("boundary_" + std::to_string(q), p.complex.boundary[static_cast<size_t>(q)].to_dense());
    write_csv_dir(out, files);
}

void export_matrices(const Pipeline& p, const std::string& format, const std::string& out) {
    IntMatrix s = substitution_matrix(p.rule);
    if (format == "json") {
        nlohmann::json maps = nlohmann::json::object();
        for (int q = 0; q <= p.complex.d; ++q)
            maps[std::to_string(q)] = sparse_to_json(p.map.M[static_cast<size_t>(q)]);
        nlohmann::json doc{{"rule", p.rule.name},
                           {"substitution_matrix", nlohmann::json::parse(to_json_text(s))},
                           {"chain_map", maps}};
        write_text(out, doc.dump(1) + "\n");
        return;
    }
    std::vector<std::pair<std::string, IntMatrix>> files{{"substitution_matrix", s}};
    for (int q = 0; q <= p.complex.d; ++q)
        files.emplace_back("chain_map_" + std::to_string(q), p.map.M[static_cast<size_t>(q)].to_dense());
    write_csv_dir(out, files);
}

void write_fixtures(const std::string& dir) {
    fs::create_directories(dir);
    for (const auto& [name, rule] : builtin_rules())
        write_text((fs::path(dir) / (name + ".json")).string(), rule_to_json(rule).dump(1) + "\n");
    nlohmann::json swap{{"swap", {{{"dim", 2}, {"a", {0, 1}}, {"b", {2, 3}}}}}, {"fold", {{{"dim", 4}, {"all", true}}}}};
    write_text((fs::path(dir) / "equivariant-4d-swap.json").string(), swap.dump(1) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology, cup products and frequency modules of cubical substitution tilings"};
    app.require_subcommand(1);

    CommonFlags analyze_flags;
    int max_degree = -1;
    bool ring = false, chern = false, no_per_dimension = false;
    int border_levels = 0;
    std::vector<std::string> probes;
    auto* analyze_cmd = app.add_subcommand("analyze", "compute the analysis report");
    add_common(analyze_cmd, analyze_flags);
    analyze_cmd->add_option("--max-degree", max_degree, "highest cohomological degree");
    analyze_cmd->add_flag("--ring", ring, "cup-product bilinear forms by eigenvalue");
    analyze_cmd->add_flag("--chern", chern, "Chern integrality check (d = 4)");
    analyze_cmd->add_option("--probe", probes, "divisibility probe p:K of every generator");
    analyze_cmd->add_option("--border-probe", border_levels, "border-forcing probe up to this level");
    analyze_cmd->add_flag("--no-per-dimension", no_per_dimension, "skip per-dimension frequency modules");

    CommonFlags export_flags;
    std::string what = "matrices", format = "json";
    auto* export_cmd = app.add_subcommand("export", "dump windows, the complex or matrices");
    add_common(export_cmd, export_flags);
    export_cmd->add_option("--what", what)->check(CLI::IsMember({"windows", "complex", "matrices"}));
    export_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CommonFlags derive_flags;
    auto* derive_cmd = app.add_subcommand("derive", "write the induced rule on 2^d windows");
    add_common(derive_cmd, derive_flags);

    std::string fixture_dir = "fixtures";
    auto* fixtures_cmd = app.add_subcommand("fixtures", "write every builtin rule as JSON");
    fixtures_cmd->add_option("dir", fixture_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : UsageError("").exit_code();
    }

    try {
        if (*analyze_cmd) {
            AnalysisOptions o = options_from(analyze_flags);
            o.max_degree = max_degree;
            o.ring = ring;
            o.chern = chern;
            o.border_probe_levels = border_levels;
            o.per_dimension_frequency = !no_per_dimension;
            for (const auto& s : probes) o.probes.push_back(parse_probe(s));
            nlohmann::json report = analyze(resolve_rule(analyze_flags.rule), o);
            write_text(analyze_flags.out, report.dump(2) + "\n");
        } else if (*export_cmd) {
            AnalysisOptions o = options_from(export_flags);
            auto p = build_pipeline(resolve_rule(export_flags.rule), o);
            if (what == "windows")
                export_windows(*p, format, export_flags.out);
            else if (what == "complex")
                export_complex(*p, format, export_flags.out);
            else
                export_matrices(*p, format, export_flags.out);
        } else if (*derive_cmd) {
            AnalysisOptions o = options_from(derive_flags);
            SubstitutionRule rule = resolve_rule(derive_flags.rule);
            if (o.product) rule = product_rule(rule, *o.product);
            WindowLanguage base = enumerate_legal_windows(rule, {Shape(static_cast<size_t>(rule.d), 2)});
            SubstitutionRule derived = derive_window_rule(rule, base, o.derive_shift);
            if (o.color_quotient) {
                validate_involution(*o.color_quotient, rule.m);
                derived = quotient_rule_by_involution(derived, induced_window_involution(base, rule.d, *o.color_quotient));
            }
            write_text(derive_flags.out, rule_to_json(derived).dump() + "\n");
        } else if (*fixtures_cmd) {
            write_fixtures(fixture_dir);
        }
    } catch (const Error& e) {
        std::cerr << nlohmann::json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
