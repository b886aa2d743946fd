#include "tilecoh/substitution.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "tilecoh/errors.hpp"

namespace tilecoh {

size_t ipow(size_t base, unsigned e) {
    size_t r = 1;
    while (e--) r *= base;
    return r;
}

size_t shape_volume(const Shape& extents) {
    size_t v = 1;
    for (int e : extents) v *= static_cast<size_t>(e);
    return v;
}

size_t flat_index(const std::vector<int>& coords, const Shape& extents) {
    size_t r = 0;
    for (size_t a = 0; a < extents.size(); ++a) r = r * static_cast<size_t>(extents[a]) + static_cast<size_t>(coords[a]);
    return r;
}

std::vector<int> unflatten(size_t index, const Shape& extents) {
    std::vector<int> c(extents.size());
    for (size_t a = extents.size(); a-- > 0;) {
        c[a] = static_cast<int>(index % static_cast<size_t>(extents[a]));
        index /= static_cast<size_t>(extents[a]);
    }
    return c;
}

void validate_rule(const SubstitutionRule& rule) {
    if (rule.d < 1) throw RangeError("dimension must be at least 1");
    if (rule.lambda < 2) throw RangeError("expansion must be at least 2");
    if (rule.m < 1) throw RangeError("color count must be at least 1");
    if (static_cast<int>(rule.table.size()) != rule.m)
        throw LengthError("table has " + std::to_string(rule.table.size()) + " rows, expected " + std::to_string(rule.m));
    const size_t n = rule.block_size();
    for (size_t c = 0; c < rule.table.size(); ++c) {
        if (rule.table[c].size() != n)
            throw LengthError("row " + std::to_string(c) + " has length " + std::to_string(rule.table[c].size()) +
                              ", expected " + std::to_string(n));
        for (int x : rule.table[c])
            if (x < 0 || x >= rule.m)
                throw RangeError("row " + std::to_string(c) + " contains color " + std::to_string(x) +
                                 " outside [0," + std::to_string(rule.m) + ")");
    }
}

SubstitutionRule parse_rule(const nlohmann::json& doc) {
    if (!doc.is_object()) throw SchemaError("rule document must be a JSON object");
    for (const char* key : {"dimension", "expansion", "colors", "table"})
        if (!doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    SubstitutionRule r;
    try {
        r.name = doc.value("name", std::string("unnamed"));
        r.d = doc.at("dimension").get<int>();
        r.lambda = doc.at("expansion").get<int>();
        r.m = doc.at("colors").get<int>();
        r.table = doc.at("table").get<std::vector<std::vector<int>>>();
        if (doc.contains("forces_border")) r.forces_border = doc.at("forces_border").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed rule field: ") + e.what());
    }
    validate_rule(r);
    return r;
}

SubstitutionRule parse_rule_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return parse_rule(doc);
}

SubstitutionRule load_rule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read rule file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_rule_text(ss.str());
}

nlohmann::json rule_to_json(const SubstitutionRule& rule) {
    nlohmann::json j;
    j["name"] = rule.name;
    j["dimension"] = rule.d;
    j["expansion"] = rule.lambda;
    j["colors"] = rule.m;
    j["table"] = rule.table;
    if (rule.forces_border) j["forces_border"] = *rule.forces_border;
    return j;
}

LatticePatch single_tile_patch(int d, int color) { return LatticePatch{Shape(static_cast<size_t>(d), 1), {color}}; }

LatticePatch substitute_patch(const SubstitutionRule& rule, const LatticePatch& patch, unsigned k) {
    LatticePatch cur = patch;
    const size_t d = static_cast<size_t>(rule.d);
    if (cur.extents.size() != d || cur.colors.size() != shape_volume(cur.extents))
        throw DimensionMismatch("patch does not match rule dimension");
    const Shape block(d, rule.lambda);
    const size_t bsize = rule.block_size();
    for (unsigned step = 0; step < k; ++step) {
        LatticePatch next;
        next.extents.resize(d);
        for (size_t a = 0; a < d; ++a) next.extents[a] = cur.extents[a] * rule.lambda;
        next.colors.assign(shape_volume(next.extents), 0);
        std::vector<int> pc(d, 0), cc(d);
        for (size_t i = 0; i < cur.colors.size(); ++i) {
            pc = unflatten(i, cur.extents);
            const auto& row = rule.table[static_cast<size_t>(cur.colors[i])];
            for (size_t q = 0; q < bsize; ++q) {
                auto qc = unflatten(q, block);
                for (size_t a = 0; a < d; ++a) cc[a] = pc[a] * rule.lambda + qc[a];
                next.colors[flat_index(cc, next.extents)] = row[q];
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<int> extract_window(const LatticePatch& patch, const std::vector<int>& offset, const Shape& shape) {
    const size_t d = shape.size();
    std::vector<int> out(shape_volume(shape));
    std::vector<int> c(d);
    for (size_t i = 0; i < out.size(); ++i) {
        auto local = unflatten(i, shape);
        for (size_t a = 0; a < d; ++a) c[a] = offset[a] + local[a];
        out[i] = patch.colors[flat_index(c, patch.extents)];
    }
    return out;
}

IntMatrix substitution_matrix(const SubstitutionRule& rule) {
    IntMatrix s(static_cast<size_t>(rule.m), static_cast<size_t>(rule.m));
    for (int j = 0; j < rule.m; ++j)
        for (int c : rule.table[static_cast<size_t>(j)]) s(static_cast<size_t>(c), static_cast<size_t>(j)) += Int(1);
    return s;
}

PrimitivityResult primitivity_check(const SubstitutionRule& rule) {
    const size_t m = static_cast<size_t>(rule.m);
    std::vector<std::vector<char>> s(m, std::vector<char>(m, 0));
    for (size_t j = 0; j < m; ++j)
        for (int c : rule.table[j]) s[static_cast<size_t>(c)][j] = 1;
    auto power = s;
    // Wielandt: a primitive m x m matrix has S^k > 0 for some k <= (m-1)^2 + 1.
    const size_t bound = (m - 1) * (m - 1) + 1;
    for (size_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (size_t i = 0; i < m && positive; ++i)
            for (size_t j = 0; j < m; ++j)
                if (!power[i][j]) {
                    positive = false;
                    break;
                }
        if (positive) return {true, static_cast<unsigned>(k)};
        std::vector<std::vector<char>> next(m, std::vector<char>(m, 0));
        for (size_t i = 0; i < m; ++i)
            for (size_t l = 0; l < m; ++l) {
                if (!power[i][l]) continue;
                for (size_t j = 0; j < m; ++j)
                    if (s[l][j]) next[i][j] = 1;
            }
        power = std::move(next);
    }
    return {false, std::nullopt};
}

SubstitutionRule product_rule(const SubstitutionRule& a, const SubstitutionRule& b) {
    if (a.lambda != b.lambda)
        throw ExpansionMismatch("expansions " + std::to_string(a.lambda) + " and " + std::to_string(b.lambda) + " differ");
    SubstitutionRule r;
    r.name = a.name + "x" + b.name;
    r.d = a.d + b.d;
    r.lambda = a.lambda;
    r.m = a.m * b.m;
    const size_t na = a.block_size(), nb = b.block_size();
    r.table.assign(static_cast<size_t>(r.m), std::vector<int>(na * nb));
    for (int i = 0; i < a.m; ++i)
        for (int j = 0; j < b.m; ++j) {
            auto& row = r.table[static_cast<size_t>(i * b.m + j)];
            for (size_t p = 0; p < na; ++p)
                for (size_t q = 0; q < nb; ++q)
                    row[p * nb + q] = a.table[static_cast<size_t>(i)][p] * b.m + b.table[static_cast<size_t>(j)][q];
        }
    if (a.forces_border && b.forces_border) r.forces_border = *a.forces_border && *b.forces_border;
    return r;
}

void validate_involution(const ColorInvolution& g, int m) {
    if (static_cast<int>(g.perm.size()) != m) throw IncompatibleInvolution("involution size differs from color count");
    for (int i = 0; i < m; ++i) {
        int j = g.perm[static_cast<size_t>(i)];
        if (j < 0 || j >= m || g.perm[static_cast<size_t>(j)] != i)
            throw IncompatibleInvolution("color map is not an involution at " + std::to_string(i));
    }
}

std::vector<int> involution_orbits(const ColorInvolution& g) {
    std::vector<int> orbit(g.perm.size(), -1);
    int next = 0;
    for (size_t i = 0; i < g.perm.size(); ++i) {
        if (orbit[i] >= 0) continue;
        orbit[i] = next;
        orbit[static_cast<size_t>(g.perm[i])] = next;
        ++next;
    }
    return orbit;
}

SubstitutionRule quotient_rule_by_involution(const SubstitutionRule& rule, const ColorInvolution& g) {
    validate_involution(g, rule.m);
    for (int i = 0; i < rule.m; ++i) {
        const auto& row = rule.table[static_cast<size_t>(i)];
        const auto& image = rule.table[static_cast<size_t>(g.perm[static_cast<size_t>(i)])];
        for (size_t k = 0; k < row.size(); ++k)
            if (g.perm[static_cast<size_t>(row[k])] != image[k])
                throw IncompatibleInvolution("row " + std::to_string(i) + " is not carried to row " +
                                             std::to_string(g.perm[static_cast<size_t>(i)]) + " at position " +
                                             std::to_string(k));
    }
    auto orbit = involution_orbits(g);
    SubstitutionRule q;
    q.name = rule.name + "/Z2";
    q.d = rule.d;
    q.lambda = rule.lambda;
    q.m = *std::max_element(orbit.begin(), orbit.end()) + 1;
    q.forces_border = rule.forces_border;
    q.table.assign(static_cast<size_t>(q.m), {});
    for (int i = 0; i < rule.m; ++i) {
        auto& row = q.table[static_cast<size_t>(orbit[static_cast<size_t>(i)])];
        if (!row.empty()) continue;
        for (int c : rule.table[static_cast<size_t>(i)]) row.push_back(orbit[static_cast<size_t>(c)]);
    }
    return q;
}

SubstitutionRule chair_rule(int d) {
    SubstitutionRule r;
    r.name = "chair-" + std::to_string(d);
    r.d = d;
    r.lambda = 2;
    r.m = 1 << d;
    const int n = r.m;
    r.table.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.table[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i == n - 1 - j) ? n - 1 - j : j;
    return r;
}

SubstitutionRule one_color_rule(int d, int lambda) {
    SubstitutionRule r;
    r.name = "one-color-d" + std::to_string(d);
    r.d = d;
    r.lambda = lambda;
    r.m = 1;
    r.table = {std::vector<int>(ipow(static_cast<size_t>(lambda), static_cast<unsigned>(d)), 0)};
    r.forces_border = true;
    return r;
}

namespace {

SubstitutionRule make(const std::string& name, int d, int lambda, std::vector<std::vector<int>> table,
                      std::optional<bool> forces = std::nullopt) {
    SubstitutionRule r;
    r.name = name;
    r.d = d;
    r.lambda = lambda;
    r.m = static_cast<int>(table.size());
    r.table = std::move(table);
    r.forces_border = forces;
    validate_rule(r);
    return r;
}

std::map<std::string, SubstitutionRule> build_fixtures() {
    std::map<std::string, SubstitutionRule> f;
    auto add = [&](SubstitutionRule r) { f.emplace(r.name, std::move(r)); };

    add(make("chair-2", 2, 2, {{0, 1, 2, 0}, {0, 1, 1, 3}, {0, 2, 2, 3}, {3, 1, 2, 3}}));
    {
        auto c3 = chair_rule(3);
        add(c3);
    }

    // Expansion-5 pair in one dimension and their product.
    auto e1a = make("ex1-factor1", 1, 5, {{0, 0, 0, 0, 1}, {1, 0, 0, 0, 0}});
    auto e1b = make("ex1-factor2", 1, 5, {{0, 2, 1, 2, 0}, {0, 1, 1, 1, 0}, {0, 2, 2, 2, 0}}, true);
    auto e1 = product_rule(e1a, e1b);
    e1.name = "ex1-product";
    e1.forces_border.reset();
    add(e1a);
    add(e1b);
    add(e1);

    // Expansion-4 pair in one dimension and their product.
    auto e2a = make("ex2-factor1", 1, 4, {{0, 0, 0, 1}, {0, 1, 1, 1}});
    auto e2b = make("ex2-factor2", 1, 4, {{0, 1, 1, 0}, {1, 0, 0, 1}});
    auto e2 = product_rule(e2a, e2b);
    e2.name = "ex2-product";
    add(e2a);
    add(e2b);
    add(e2);

    add(make("ex3", 2, 5,
             {{2, 2, 2, 2, 2, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0},
              {2, 2, 2, 2, 2, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0},
              {0, 0, 0, 1, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}},
             false));
    add(make("ex4", 2, 4,
             {{0, 0, 1, 0, 2, 2, 2, 2, 1, 0, 1, 0, 0, 1, 0, 1},
              {0, 0, 0, 1, 2, 2, 2, 2, 1, 1, 1, 1, 1, 0, 0, 1},
              {2, 2, 2, 2, 1, 0, 0, 1, 2, 2, 2, 2, 2, 2, 2, 2}}));

    // Eight-prototile checkerboard rule: row i is row 0 shifted by i mod 8.
    {
        const std::vector<int> r0 = {0, 1, 0, 2, 3, 2, 0, 1, 0, 2, 3, 2, 0, 1, 0, 2, 3, 2, 0, 1, 0, 2, 3, 2, 0, 1, 0,
                                     2, 3, 2, 0, 1, 0, 2, 3, 2, 0, 1, 0, 0, 1, 0, 0, 1, 0, 2, 3, 2, 0, 1, 0, 2, 3, 2,
                                     0, 1, 0, 2, 3, 2, 0, 1, 0, 2, 3, 2, 0, 1, 0, 2, 3, 2, 0, 1, 0, 2, 3, 2, 0, 1, 0};
        std::vector<std::vector<int>> t(8);
        for (int i = 0; i < 8; ++i)
            for (int x : r0) t[static_cast<size_t>(i)].push_back((x + i) % 8);
        add(make("main-4d", 4, 3, t));
    }
    {
        const std::vector<int> r0 = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0,
                                     1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1,
                                     0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0};
        std::vector<std::vector<int>> t(3);
        for (int i = 0; i < 3; ++i)
            for (int x : r0) t[static_cast<size_t>(i)].push_back(x == 0 ? i : (i + 1) % 3);
        add(make("three-prototile-4d", 4, 3, t));
    }
    add(make("two-prototile-4d", 4, 3,
             {{0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0,
               0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1,
               0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0},
              {1, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1, 0, 1, 1, 1, 1, 1,
               1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0,
               1, 0, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 0, 1}}));

    // Squiral rule and its four-dimensional generalization (row 1 is the complement of row 0).
    add(make("squiral-2d", 2, 3, {{1, 0, 1, 0, 0, 0, 1, 0, 1}, {0, 1, 0, 1, 1, 1, 0, 1, 0}}));
    {
        const std::vector<int> r0 = {1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1,
                                     0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                     1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1};
        std::vector<int> r1;
        for (int x : r0) r1.push_back(1 - x);
        add(make("squiral-4d", 4, 3, {r0, r1}));
    }

    // Two-prototile rule whose complex is the 3-skeleton of the 4-torus plus two 4-cells.
    {
        std::vector<int> r0(81, 0);
        r0[40] = 1;
        add(make("equivariant-4d", 4, 3, {r0, std::vector<int>(81, 0)}, true));
        std::vector<int> s0(9, 0);
        s0[4] = 1;
        add(make("equivariant-2d", 2, 3, {s0, std::vector<int>(9, 0)}, true));
    }

    add(one_color_rule(1, 2));
    add(one_color_rule(2, 2));
    add(one_color_rule(4, 3));
    return f;
}

}  // namespace

const std::map<std::string, SubstitutionRule>& builtin_rules() {
    static const std::map<std::string, SubstitutionRule> fixtures = build_fixtures();
    return fixtures;
}

const SubstitutionRule& builtin_rule(const std::string& name) {
    const auto& all = builtin_rules();
    auto it = all.find(name);
    if (it == all.end()) throw SchemaError("unknown builtin rule '" + name + "'");
    return it->second;
}

}  // namespace tilecoh
