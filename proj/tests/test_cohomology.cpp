#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "tilecoh/cohomology.hpp"
#include "tilecoh/errors.hpp"
#include "tilecoh/snf.hpp"

using namespace tilecoh;
using testsupport::limit_eigenvalues;
using testsupport::pipeline;
using testsupport::sorted;

namespace {

// H^q from dense Smith forms of the full coboundaries.
std::pair<size_t, std::vector<Int>> brute_force_group(const CellComplexData& cx, int q) {
    auto delta = [&](int k) -> IntMatrix {
        if (k < 0 || k >= cx.d) return IntMatrix(k < 0 ? cx.count(0) : 0, k < 0 ? 0 : cx.count(k));
        return cx.boundary[static_cast<size_t>(k + 1)].to_dense().transpose();
    };
    SnfOptions none;
    none.want_u = none.want_v = false;
    auto out = smith_normal_form(delta(q), none);
    auto in = smith_normal_form(delta(q - 1), none);
    size_t rank = cx.count(q) - out.rank - in.rank;
    std::vector<Int> torsion;
    for (size_t i = 0; i < in.rank; ++i)
        if (in.D(i, i) > 1) torsion.push_back(in.D(i, i));
    return {rank, torsion};
}

}  // namespace

TEST_CASE("reduced cohomology agrees with dense Smith forms on every small fixture") {
    for (const char* name : {"one-color-d2", "ex1-product", "ex2-product", "ex3", "ex4", "chair-2", "squiral-2d",
                             "equivariant-2d", "ex1-factor1", "ex2-factor2"}) {
        CAPTURE(name);
        auto p = pipeline(name);
        for (int q = 0; q <= p->complex.d; ++q) {
            CAPTURE(q);
            const auto& g = p->engine->group(q);
            auto [rank, torsion] = brute_force_group(p->complex, q);
            CHECK(g.rank == rank);
            CHECK(g.torsion == torsion);
        }
    }
}

TEST_CASE("generators are cocycles and project to unit coordinates") {
    auto p = pipeline("ex4");
    for (int q = 0; q <= 2; ++q) {
        const auto& g = p->engine->group(q);
        for (size_t i = 0; i < g.size(); ++i) {
            CHECK(p->engine->is_cocycle(q, g.generators[i]));
            IntVector e(g.size());
            e[i] = 1;
            CHECK(p->engine->project_cocycle(q, g.generators[i]) == e);
        }
    }
}

TEST_CASE("coboundaries project to zero and non-cocycles are rejected") {
    auto p = pipeline("ex3");
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-3, 3);
    IntVector x(p->complex.count(0));
    for (auto& v : x) v = dist(rng);
    IntVector dx = p->engine->coboundary(0, x);
    CHECK(p->engine->project_cocycle(1, dx) == IntVector(p->engine->group(1).size()));
    IntVector y(p->complex.count(1));
    y[0] = 1;
    if (!p->engine->is_cocycle(1, y)) CHECK_THROWS_AS(p->engine->project_cocycle(1, y), NotACocycle);
}

TEST_CASE("unit-pivot reduction round-trips cohomology classes") {
    auto p = pipeline("ex2-product");
    const auto& red = p->engine->reduced();
    CHECK(red.cancelled_pairs() > 0);
    for (int q = 0; q <= 2; ++q) {
        const auto& g = p->engine->group(q);
        for (const auto& gen : g.generators) {
            IntVector lifted = red.lift(q, red.project(q, gen));
            IntVector diff(gen.size());
            for (size_t i = 0; i < gen.size(); ++i) diff[i] = lifted[i] - gen[i];
            CHECK(p->engine->project_cocycle(q, diff) == IntVector(g.size()));
        }
    }
}

TEST_CASE("group description") {
    FgAbGroup g;
    g.rank = 3;
    g.torsion = {Int(2), Int(2), Int(4)};
    CHECK(g.describe() == "Z_2^2 + Z_4 + Z^3");
    CHECK(g.normalize({Int(3), Int(-1), Int(9), Int(5), Int(0), Int(-2)}) ==
          IntVector{Int(1), Int(1), Int(1), Int(5), Int(0), Int(-2)});
}

TEST_CASE("example cohomology eigenvalues") {
    auto ex1 = pipeline("ex1-product");
    CHECK(limit_eigenvalues(*ex1, 1) == sorted({5, 5, 3, -1}));
    CHECK(limit_eigenvalues(*ex1, 2) == sorted({25, 15, -5, -3}));
    auto ex2 = pipeline("ex2-product");
    CHECK(limit_eigenvalues(*ex2, 1) == sorted({4, 4, 2, 1}));
    CHECK(limit_eigenvalues(*ex2, 2) == sorted({16, 8, 4, 2}));
    auto ex3 = pipeline("ex3");
    CHECK(limit_eigenvalues(*ex3, 1) == sorted({5, 5, 3, -1}));
    CHECK(limit_eigenvalues(*ex3, 2) == sorted({25, 15, -5, -3}));
    auto ex4 = pipeline("ex4");
    CHECK(limit_eigenvalues(*ex4, 1) == sorted({4, 4, 2, 1}));
    CHECK(limit_eigenvalues(*ex4, 2) == sorted({16, 8, 4, 2}));
}

TEST_CASE("induced maps of the torus are multiplication by lambda^q") {
    auto p = pipeline("one-color-d2");
    CHECK(induced_cohomology_map(*p->engine, p->map, 1) == testsupport::matrix_from(nlohmann::json::parse("[[2,0],[0,2]]")));
    CHECK(limit_eigenvalues(*p, 2) == std::vector<long>{4});
}

TEST_CASE("Kunneth: product eigenvalues are products of factor eigenvalues") {
    const std::vector<std::tuple<std::string, std::string, std::string>> cases = {
        {"ex1-factor1", "ex1-factor2", "ex1-product"}, {"ex2-factor1", "ex2-factor2", "ex2-product"}};
    for (const auto& [a, b, prod] : cases) {
        CAPTURE(prod);
        auto pa = pipeline(a), pb = pipeline(b), pp = pipeline(prod);
        for (int k = 0; k <= 2; ++k) {
            std::vector<long> expected;
            for (int i = 0; i <= 1; ++i) {
                int j = k - i;
                if (j < 0 || j > 1) continue;
                for (long x : limit_eigenvalues(*pa, i))
                    for (long y : limit_eigenvalues(*pb, j)) expected.push_back(x * y);
            }
            CHECK(limit_eigenvalues(*pp, k) == sorted(expected));
        }
    }
}

TEST_CASE("cochain_cohomology matches the engine") {
    auto p = pipeline("ex3");
    for (int q = 0; q <= 2; ++q) {
        auto g = cochain_cohomology(p->complex, q);
        CHECK(g.rank == p->engine->group(q).rank);
        CHECK(g.torsion == p->engine->group(q).torsion);
    }
}

TEST_CASE("a non-chain map is rejected") {
    auto p = pipeline("ex2-product");
    CellMap bad = p->map;
    IntMatrix m1 = bad.M[1].to_dense();
    m1(0, 0) += 1;
    bad.M[1] = SparseMatrix::from_dense(m1);
    CHECK_THROWS_AS(induced_cohomology_map(*p->engine, bad, 1), NotCochainMap);
}
