#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "tilecoh/errors.hpp"
#include "tilecoh/ring.hpp"

using namespace tilecoh;
using testsupport::pipeline;

namespace {

const nlohmann::json kSwap = nlohmann::json::parse(R"({"swap":[{"dim":2,"a":[0,1],"b":[2,3]}],"fold":[{"dim":4,"all":true}]})");

IntVector random_cochain(std::mt19937_64& rng, size_t n) {
    std::uniform_int_distribution<int> dist(-3, 3);
    IntVector v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

IntVector add(IntVector a, const IntVector& b, long sign = 1) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i] * Int(sign);
    return a;
}

struct Fixture {
    std::string name;
    tilecoh::AnalysisOptions opts;
};

std::vector<Fixture> ring_fixtures() {
    std::vector<Fixture> out;
    for (const char* n : {"one-color-d2", "ex3", "ex2-product", "ex4", "chair-2", "squiral-2d", "one-color-d4"})
        out.push_back({n, {}});
    out.push_back({"equivariant-4d", testsupport::ap_options()});
    out.push_back({"equivariant-2d", testsupport::ap_options()});
    return out;
}

}  // namespace

TEST_CASE("cup product: Leibniz rule and associativity on random cochains") {
    std::mt19937_64 rng(11);
    for (const auto& f : ring_fixtures()) {
        CAPTURE(f.name);
        auto p = pipeline(f.name, f.opts);
        const auto& cx = p->complex;
        for (int a = 0; a <= cx.d; ++a)
            for (int b = 0; a + b <= cx.d; ++b) {
                IntVector x = random_cochain(rng, cx.count(a)), y = random_cochain(rng, cx.count(b));
                if (a + b < cx.d) {
                    IntVector lhs = p->engine->coboundary(a + b, cup_cochain(cx, a, x, b, y));
                    IntVector rhs = add(cup_cochain(cx, a + 1, p->engine->coboundary(a, x), b, y),
                                        cup_cochain(cx, a, x, b + 1, p->engine->coboundary(b, y)), a % 2 ? -1 : 1);
                    CHECK(lhs == rhs);
                }
                for (int c = 0; a + b + c <= cx.d; ++c) {
                    IntVector z = random_cochain(rng, cx.count(c));
                    CHECK(cup_cochain(cx, a + b, cup_cochain(cx, a, x, b, y), c, z) ==
                          cup_cochain(cx, a, x, b + c, cup_cochain(cx, b, y, c, z)));
                }
            }
    }
}

TEST_CASE("cup product: graded commutativity and naturality in cohomology") {
    for (const auto& f : ring_fixtures()) {
        CAPTURE(f.name);
        auto p = pipeline(f.name, f.opts);
        const auto& cx = p->complex;
        auto& e = *p->engine;
        for (int a = 1; a <= cx.d; ++a)
            for (int b = a; a + b <= cx.d; ++b) {
                const auto& ga = e.group(a);
                const auto& gb = e.group(b);
                const auto& gab = e.group(a + b);
                long sign = (a * b) % 2 ? -1 : 1;
                for (size_t i = 0; i < ga.size(); ++i)
                    for (size_t j = 0; j < gb.size(); ++j) {
                        const IntVector& x = ga.generators[i];
                        const IntVector& y = gb.generators[j];
                        IntVector xy = cup_cochain(cx, a, x, b, y);
                        IntVector yx = cup_cochain(cx, b, y, a, x);
                        CHECK(gab.normalize(e.project_cocycle(a + b, add(xy, yx, -sign))) == IntVector(gab.size()));
                        // f^#(x cup y) and f^#x cup f^#y are cohomologous.
                        IntVector pulled = p->map.M[static_cast<size_t>(a + b)].apply_transpose(xy);
                        IntVector separately = cup_cochain(cx, a, p->map.M[static_cast<size_t>(a)].apply_transpose(x), b,
                                                           p->map.M[static_cast<size_t>(b)].apply_transpose(y));
                        CHECK(gab.normalize(e.project_cocycle(a + b, add(pulled, separately, -1))) ==
                              IntVector(gab.size()));
                    }
            }
    }
}

TEST_CASE("torus cup product is the standard symplectic form") {
    auto p = pipeline("one-color-d2");
    auto table = cup_cohomology(*p->engine, 1, 1);
    REQUIRE(table[0][1].size() == 1);
    CHECK(abs(table[0][1][0]) == 1);
    CHECK(table[1][0][0] == -table[0][1][0]);
    CHECK(table[0][0] == IntVector{Int(0)});
}

TEST_CASE("bilinear forms by eigenvalue on the examples") {
    auto all_surjective = [](const BilinearFormsReport& r) {
        for (const auto& f : r.forms)
            if (!f.surjective) return false;
        return !r.forms.empty();
    };
    auto zero_form = [](const BilinearFormsReport& r, long value) {
        for (const auto& f : r.forms)
            if (f.target_value == Int(value)) return !f.surjective;
        return false;
    };
    for (const char* name : {"ex1-product", "ex2-product"}) {
        CAPTURE(name);
        auto p = pipeline(name);
        auto r = bilinear_forms_by_eigenvalue(*p->engine, p->map, 1, 1);
        CHECK(all_surjective(r));
        CHECK(r.eigenvalue_compatible);
    }
    auto ex3 = pipeline("ex3");
    CHECK(zero_form(bilinear_forms_by_eigenvalue(*ex3->engine, ex3->map, 1, 1), -3));
    auto ex4 = pipeline("ex4");
    CHECK(zero_form(bilinear_forms_by_eigenvalue(*ex4->engine, ex4->map, 1, 1), 2));
}

TEST_CASE("Chern check on tori and on the two-prototile torus skeleton") {
    auto t4 = pipeline("one-color-d4");
    CHECK(chern_integrality_check(*t4->engine, t4->map).status == ChernStatus::NoObstructionFound);
    auto plain = pipeline("equivariant-4d", testsupport::ap_options());
    CHECK(chern_integrality_check(*plain->engine, plain->map).status == ChernStatus::NoObstructionFound);

    auto opts = testsupport::ap_options();
    opts.quotient = kSwap;
    auto q = pipeline("equivariant-4d", opts);
    auto verdict = chern_integrality_check(*q->engine, q->map);
    CHECK(verdict.status == ChernStatus::NotIntegral);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->square == IntVector{Int(1), Int(1)});
    CHECK_FALSE(verdict.witness->divisible);

    auto two_d = pipeline("one-color-d2");
    CHECK_THROWS_AS(chern_integrality_check(*two_d->engine, two_d->map), WrongDimension);
}

TEST_CASE("cup products that do not descend to a quotient are rejected") {
    auto opts = testsupport::ap_options();
    opts.quotient = kSwap;
    auto q = pipeline("equivariant-4d", opts);
    CHECK_THROWS_AS(bilinear_forms_by_eigenvalue(*q->engine, q->map, 1, 1), NotACocycle);
    CHECK_NOTHROW(bilinear_forms_by_eigenvalue(*q->engine, q->map, 1, 2));
}
