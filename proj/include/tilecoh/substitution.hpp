#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tilecoh/matrix.hpp"

namespace tilecoh {

using Shape = std::vector<int>;

// Flattened index of coords inside a box of the given extents; axis 0 is the
// slowest, the last axis the fastest.
size_t flat_index(const std::vector<int>& coords, const Shape& extents);
std::vector<int> unflatten(size_t index, const Shape& extents);
size_t shape_volume(const Shape& extents);
size_t ipow(size_t base, unsigned e);

struct SubstitutionRule {
    std::string name;
    int d = 1;
    int lambda = 2;
    int m = 1;
    // table[c][k]: color of the child at flattened block position k.
    std::vector<std::vector<int>> table;
    // User assertion that the rule forces the border (absent if unknown).
    std::optional<bool> forces_border;

    size_t block_size() const { return ipow(static_cast<size_t>(lambda), static_cast<unsigned>(d)); }
    bool operator==(const SubstitutionRule& o) const {
        return d == o.d && lambda == o.lambda && m == o.m && table == o.table;
    }
};

// Throws SchemaError / RangeError / LengthError on invalid data.
void validate_rule(const SubstitutionRule& rule);
SubstitutionRule parse_rule(const nlohmann::json& document);
SubstitutionRule parse_rule_text(const std::string& text);
SubstitutionRule load_rule_file(const std::string& path);
nlohmann::json rule_to_json(const SubstitutionRule& rule);

struct LatticePatch {
    Shape extents;
    std::vector<int> colors;

    bool operator==(const LatticePatch& o) const { return extents == o.extents && colors == o.colors; }
};

LatticePatch single_tile_patch(int d, int color);
LatticePatch substitute_patch(const SubstitutionRule& rule, const LatticePatch& patch, unsigned k);
// Sub-box of a patch at the given offset.
std::vector<int> extract_window(const LatticePatch& patch, const std::vector<int>& offset, const Shape& shape);

// S[i][j] = number of children of color i in the substitution of color j.
IntMatrix substitution_matrix(const SubstitutionRule& rule);

struct PrimitivityResult {
    bool primitive = false;
    std::optional<unsigned> exponent;
};
PrimitivityResult primitivity_check(const SubstitutionRule& rule);

SubstitutionRule product_rule(const SubstitutionRule& a, const SubstitutionRule& b);

struct ColorInvolution {
    std::vector<int> perm;
};
void validate_involution(const ColorInvolution& g, int m);
// Colors are the orbits of g, numbered by their smallest member.
SubstitutionRule quotient_rule_by_involution(const SubstitutionRule& rule, const ColorInvolution& g);
// Orbit number of every color under g (same numbering as the quotient rule).
std::vector<int> involution_orbits(const ColorInvolution& g);

SubstitutionRule chair_rule(int d);
SubstitutionRule one_color_rule(int d, int lambda);

// Named rule fixtures, each transcribed from a published table.
const std::map<std::string, SubstitutionRule>& builtin_rules();
const SubstitutionRule& builtin_rule(const std::string& name);

}  // namespace tilecoh
