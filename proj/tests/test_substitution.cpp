#include "doctest.h"
#include "test_support.hpp"
#include "tilecoh/errors.hpp"
#include "tilecoh/substitution.hpp"

using namespace tilecoh;

TEST_CASE("every builtin rule validates, round-trips through JSON and is primitive") {
    for (const auto& [name, rule] : builtin_rules()) {
        CAPTURE(name);
        validate_rule(rule);
        SubstitutionRule back = parse_rule(rule_to_json(rule));
        CHECK(back == rule);
        CHECK(back.name == rule.name);
        CHECK(primitivity_check(rule).primitive);
    }
}

TEST_CASE("rule schema errors") {
    CHECK_THROWS_AS(parse_rule_text("{}"), SchemaError);
    CHECK_THROWS_AS(parse_rule_text(R"({"dimension":1,"expansion":2,"colors":1,"table":[[0]]})"), LengthError);
    CHECK_THROWS_AS(parse_rule_text(R"({"dimension":1,"expansion":2,"colors":1,"table":[[0,1]]})"), RangeError);
    CHECK_THROWS_AS(parse_rule_text("not json"), SchemaError);
}

TEST_CASE("substitution matrix counts children") {
    const auto& r = builtin_rule("ex2-factor1");
    IntMatrix s = substitution_matrix(r);
    CHECK(s == testsupport::matrix_from(nlohmann::json::parse("[[3,1],[1,3]]")));
    CHECK(primitivity_check(r).exponent == 1u);
}

TEST_CASE("non-primitive rule is detected") {
    auto r = parse_rule_text(R"({"dimension":1,"expansion":2,"colors":2,"table":[[0,0],[1,1]]})");
    CHECK_FALSE(primitivity_check(r).primitive);
}

TEST_CASE("product rule has the product matrix of its factors") {
    const auto& a = builtin_rule("ex1-factor1");
    const auto& b = builtin_rule("ex1-factor2");
    SubstitutionRule p = product_rule(a, b);
    CHECK(p.d == 2);
    CHECK(p.m == a.m * b.m);
    CHECK(p == builtin_rule("ex1-product"));
    IntMatrix sa = substitution_matrix(a), sb = substitution_matrix(b), sp = substitution_matrix(p);
    for (size_t i = 0; i < sp.rows(); ++i)
        for (size_t j = 0; j < sp.cols(); ++j)
            CHECK(sp(i, j) == sa(i / b.m, j / b.m) * sb(i % b.m, j % b.m));
}

TEST_CASE("substituting twice equals substituting once with the square rule") {
    const auto& r = builtin_rule("ex3");
    LatticePatch p = single_tile_patch(2, 1);
    LatticePatch twice = substitute_patch(r, substitute_patch(r, p, 1), 1);
    CHECK(twice == substitute_patch(r, p, 2));
    CHECK(twice.extents == Shape{25, 25});
}

TEST_CASE("color quotient numbers orbits by their smallest member") {
    ColorInvolution g{{1, 0}};
    CHECK(involution_orbits(g) == std::vector<int>{0, 0});
    CHECK_THROWS(validate_involution(ColorInvolution{{1, 1}}, 2));
    CHECK(quotient_rule_by_involution(builtin_rule("squiral-2d"), g).m == 1);
    CHECK_THROWS_AS(quotient_rule_by_involution(builtin_rule("ex2-factor1"), g), IncompatibleInvolution);
}
