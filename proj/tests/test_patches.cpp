#include "doctest.h"
#include "test_support.hpp"
#include "tilecoh/patches.hpp"

using namespace tilecoh;

TEST_CASE("the first factor of example 1 has four legal windows of length 2") {
    auto lang = enumerate_legal_windows(builtin_rule("ex1-factor1"), {Shape{2}});
    CHECK(lang.count(Shape{2}) == 4);
}

TEST_CASE("one-color rules have exactly one window per shape") {
    auto lang = enumerate_legal_windows(builtin_rule("one-color-d2"), box_shapes(2, 1, 2));
    for (const auto& s : lang.shapes()) CHECK(lang.count(s) == 1);
}

TEST_CASE("window enumeration is stable when the seed level is raised") {
    for (const char* name : {"ex1-product", "ex2-product", "ex3", "ex4", "chair-2", "squiral-2d"}) {
        CAPTURE(name);
        const auto& r = builtin_rule(name);
        auto shapes = box_shapes(r.d, 1, 2);
        auto base = enumerate_legal_windows(r, shapes);
        EnumerationOptions deeper;
        deeper.seed_level = base.seed_level + 1;
        auto more = enumerate_legal_windows(r, shapes, deeper);
        for (const auto& s : shapes) CHECK(base.windows(s) == more.windows(s));
    }
}

TEST_CASE("every legal window appears in some supertile") {
    const auto& r = builtin_rule("ex4");
    auto lang = enumerate_legal_windows(r, {Shape{2, 2}});
    std::set<std::vector<int>> seen;
    for (int c = 0; c < r.m; ++c) {
        LatticePatch p = substitute_patch(r, single_tile_patch(2, c), 3);
        for (int x = 0; x + 2 <= p.extents[0]; ++x)
            for (int y = 0; y + 2 <= p.extents[1]; ++y) seen.insert(extract_window(p, {x, y}, Shape{2, 2}));
    }
    for (const auto& w : lang.windows(Shape{2, 2})) CHECK(seen.count(w) == 1);
}

TEST_CASE("border forcing probe") {
    auto forced = border_forcing_probe(builtin_rule("ex1-factor2"), 2);
    CHECK(forced.forced);
    CHECK(forced.level == 1);
    CHECK(border_forcing_probe(builtin_rule("one-color-d2"), 1).forced);
    auto branched = border_forcing_probe(builtin_rule("ex3"), 2);
    CHECK_FALSE(branched.forced);
    CHECK(branched.witness.has_value());
}

TEST_CASE("derived window rule") {
    const auto& sq = builtin_rule("squiral-2d");
    auto lang = enumerate_legal_windows(sq, {Shape{2, 2}});
    auto w = derive_window_rule(sq, lang);
    CHECK(static_cast<size_t>(w.m) == lang.count(Shape{2, 2}));
    CHECK(w.lambda == sq.lambda);
    CHECK(primitivity_check(w).primitive);
    CHECK(centered_shift(3) == 1);
    CHECK(centered_shift(4) == 2);
    auto g = induced_window_involution(lang, 2, ColorInvolution{{1, 0}});
    auto q = quotient_rule_by_involution(w, g);
    CHECK(2 * q.m == w.m);
}
